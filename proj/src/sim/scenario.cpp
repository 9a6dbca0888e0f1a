// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/sim/scenario.h"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace minichain {

std::string_view to_string(Topology t) {
    switch (t) {
        case Topology::complete: return "complete";
        case Topology::ring: return "ring";
        case Topology::star: return "star";
    }
    return "unknown";
}

std::string ScenarioConfig::validate() const {
    if (node_count == 0) return "node_count must be positive";
    if (node_count > 64) return "node_count above 64 is not supported";
    if (hash_rate < 0) return "hash_rate must be non-negative";
    if (duration_ms == 0) return "duration must be positive";
    if (rate_change_factor <= 0) return "rate_change_factor must be positive";
    if (!params.valid()) return "chain params are invalid";
    if (adversary.kind != AdversaryConfig::Kind::none) {
        if (node_count < 2) return "adversary scenarios need at least 2 nodes";
        if (adversary.attacker_fraction <= 0 || adversary.attacker_fraction >= 1)
            return "attacker_fraction must lie strictly between 0 and 1";
        if (hash_rate <= 0) return "adversary scenarios need a positive hash_rate";
    }
    if (genesis_message.empty() || genesis_message.size() > kMaxGenesisMessage)
        return "genesis message must be 1..1000 bytes";
    return "";
}

namespace {

std::string adversary_name(AdversaryConfig::Kind k) {
    switch (k) {
        case AdversaryConfig::Kind::none: return "none";
        case AdversaryConfig::Kind::double_spend: return "double_spend";
        case AdversaryConfig::Kind::withhold: return "withhold";
    }
    return "none";
}

uint64_t parse_u64(const std::string& value, const std::string& line) {
    uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw std::invalid_argument("bad integer in scenario line: " + line);
    return out;
}

double parse_double(const std::string& value, const std::string& line) {
    try {
        std::size_t used = 0;
        double d = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw std::invalid_argument("bad number in scenario line: " + line);
    }
}

}  // namespace

std::string ScenarioConfig::to_kv_text() const {
    std::ostringstream out;
    out << "seed=" << seed << "\n";
    out << "nodes=" << node_count << "\n";
    out << "topology=" << to_string(topology) << "\n";
    out << "latency_ms=" << latency_ms << "\n";
    out << "hash_rate=" << hash_rate << "\n";
    out << "duration_ms=" << duration_ms << "\n";
    out << "spacing_s=" << params.target_spacing << "\n";
    out << "retarget_interval=" << params.retarget_interval << "\n";
    out << "halving_interval=" << params.halving_interval << "\n";
    out << "coinbase_maturity=" << params.coinbase_maturity << "\n";
    out << "adversary=" << adversary_name(adversary.kind) << "\n";
    out << "confirmations=" << adversary.confirmations_z << "\n";
    out << "attacker_fraction=" << adversary.attacker_fraction << "\n";
    out << "withhold_lead=" << adversary.withhold_lead << "\n";
    out << "give_up_lead=" << adversary.give_up_lead << "\n";
    out << "rate_change_time_ms=" << rate_change_time_ms << "\n";
    out << "rate_change_factor=" << rate_change_factor << "\n";
    out << "payment_count=" << payment_count << "\n";
    out << "payment_interval_ms=" << payment_interval_ms << "\n";
    out << "payment_amount=" << payment_amount << "\n";
    out << "payment_fee=" << payment_fee << "\n";
    out << "mine_until_ms=" << mine_until_ms << "\n";
    return out.str();
}

ScenarioConfig ScenarioConfig::from_kv_text(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = line;
        std::size_t first = trimmed.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        trimmed = trimmed.substr(first);
        if (trimmed.empty() || trimmed[0] == '#') continue;

        std::size_t eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("scenario line has no '=': " + line);
        std::string key = trimmed.substr(0, eq);
        std::string value = trimmed.substr(eq + 1);

        if (key == "seed") cfg.seed = parse_u64(value, line);
        else if (key == "nodes") cfg.node_count = unsigned(parse_u64(value, line));
        else if (key == "topology") {
            if (value == "complete") cfg.topology = Topology::complete;
            else if (value == "ring") cfg.topology = Topology::ring;
            else if (value == "star") cfg.topology = Topology::star;
            else throw std::invalid_argument("unknown topology: " + value);
        }
        else if (key == "latency_ms") cfg.latency_ms = parse_u64(value, line);
        else if (key == "hash_rate") cfg.hash_rate = parse_double(value, line);
        else if (key == "duration_ms") cfg.duration_ms = parse_u64(value, line);
        else if (key == "spacing_s") cfg.params.target_spacing = parse_u64(value, line);
        else if (key == "retarget_interval")
            cfg.params.retarget_interval = uint32_t(parse_u64(value, line));
        else if (key == "halving_interval")
            cfg.params.halving_interval = uint32_t(parse_u64(value, line));
        else if (key == "coinbase_maturity")
            cfg.params.coinbase_maturity = uint32_t(parse_u64(value, line));
        else if (key == "adversary") {
            if (value == "none") cfg.adversary.kind = AdversaryConfig::Kind::none;
            else if (value == "double_spend")
                cfg.adversary.kind = AdversaryConfig::Kind::double_spend;
            else if (value == "withhold") cfg.adversary.kind = AdversaryConfig::Kind::withhold;
            else throw std::invalid_argument("unknown adversary: " + value);
        }
        else if (key == "confirmations")
            cfg.adversary.confirmations_z = unsigned(parse_u64(value, line));
        else if (key == "attacker_fraction")
            cfg.adversary.attacker_fraction = parse_double(value, line);
        else if (key == "withhold_lead")
            cfg.adversary.withhold_lead = unsigned(parse_u64(value, line));
        else if (key == "give_up_lead")
            cfg.adversary.give_up_lead = unsigned(parse_u64(value, line));
        else if (key == "rate_change_time_ms") cfg.rate_change_time_ms = parse_u64(value, line);
        else if (key == "rate_change_factor") cfg.rate_change_factor = parse_double(value, line);
        else if (key == "payment_count") cfg.payment_count = unsigned(parse_u64(value, line));
        else if (key == "payment_interval_ms")
            cfg.payment_interval_ms = parse_u64(value, line);
        else if (key == "payment_amount") cfg.payment_amount = Amount(parse_u64(value, line));
        else if (key == "payment_fee") cfg.payment_fee = Amount(parse_u64(value, line));
        else if (key == "mine_until_ms") cfg.mine_until_ms = parse_u64(value, line);
        else if (key == "genesis_message") cfg.genesis_message = value;
        else throw std::invalid_argument("unknown scenario key: " + key);
    }
    return cfg;
}

}  // namespace minichain
