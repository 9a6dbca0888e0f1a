// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/sim/attacks.h"

#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "minichain/consensus/miner.h"
#include "minichain/consensus/subsidy.h"
#include "minichain/crypto/sha256.h"

namespace minichain {

std::optional<uint32_t> tx_height_on_active(const BlockTree& tree, const Digest32& id) {
    const auto& summaries = tree.state().summaries();
    for (uint32_t h = 0; h < summaries.size(); ++h) {
        const Block* block = tree.find_block(summaries[h].hash);
        if (!block) continue;
        for (const auto& tx : block->transactions)
            if (txid(tx) == id) return h;
    }
    return std::nullopt;
}

namespace {

bool active_chain_spends_once(const BlockTree& tree) {
    std::set<OutPoint> spent;
    for (const auto& s : tree.state().summaries()) {
        const Block* b = tree.find_block(s.hash);
        if (!b) return false;
        for (const auto& tx : b->transactions) {
            if (tx.is_coinbase()) continue;
            for (const auto& in : tx.inputs)
                if (!spent.insert(in.prevout).second) return false;
        }
    }
    return true;
}

}  // namespace

namespace {

// Deterministic warm-up chain paying every subsidy to `key`; timestamps step
// one spacing per block.
std::vector<Block> build_prefix(const Block& genesis, const ChainParams& params,
                                const PublicKey& key, unsigned length) {
    std::vector<Block> blocks;
    BlockTree scratch(genesis, params);
    for (unsigned k = 1; k <= length; ++k) {
        uint64_t time = genesis.header.time + uint64_t(k) * params.target_spacing;
        Block b = assemble_block(scratch.state(), {}, make_p2pkh(hash20(ByteSpan(key.bytes))),
                                 time, k);
        AcceptResult res = scratch.accept_block(b, time);
        if (res.status != AcceptResult::Status::connected)
            throw std::logic_error("prefix block failed to connect");
        blocks.push_back(std::move(b));
    }
    return blocks;
}

std::unique_ptr<BlockTree> clone_active_chain(const Block& genesis, const ChainParams& params,
                                              const BlockTree& src) {
    auto tree = std::make_unique<BlockTree>(genesis, params);
    const auto& summaries = src.state().summaries();
    for (uint32_t h = 1; h < summaries.size(); ++h) {
        const Block* b = src.find_block(summaries[h].hash);
        AcceptResult res = tree->accept_block(*b, b->header.time);
        if (res.status != AcceptResult::Status::connected)
            throw std::logic_error("active chain clone failed");
    }
    return tree;
}

void split_hash_rate(Simulator& sim, const ScenarioConfig& cfg) {
    const double total = cfg.hash_rate;
    const double f = cfg.adversary.attacker_fraction;
    sim.set_node_hash_rate(0, total * f);
    for (unsigned i = 1; i < cfg.node_count; ++i)
        sim.set_node_hash_rate(i, total * (1.0 - f) / double(cfg.node_count - 1));
}

}  // namespace

DoubleSpendReport run_double_spend(const ScenarioConfig& base_cfg) {
    ScenarioConfig cfg = base_cfg;
    cfg.adversary.kind = AdversaryConfig::Kind::double_spend;
    cfg.payment_count = 0;
    std::string problem = cfg.validate();
    if (!problem.empty()) throw std::invalid_argument("scenario: " + problem);

    const unsigned attacker = 0;
    const unsigned merchant = 1;
    const unsigned prefix_len = cfg.params.coinbase_maturity + 1;
    const uint64_t start_ms =
        (uint64_t(prefix_len) * cfg.params.target_spacing + 1) * 1000;
    cfg.duration_ms += start_ms;
    cfg.mine_until_ms = cfg.duration_ms;

    Simulator sim(cfg);
    split_hash_rate(sim, cfg);
    sim.set_start_time_ms(start_ms);

    std::vector<Block> prefix =
        build_prefix(sim.genesis(), cfg.params, sim.miner_key(attacker).public_key, prefix_len);
    sim.preload_chain(prefix);

    // attacker's private mining world, rooted at the common prefix tip
    {
        auto private_tree = std::make_unique<BlockTree>(sim.genesis(), cfg.params);
        for (const Block& b : prefix) private_tree->accept_block(b, b.header.time);
        sim.set_mining_tree(attacker, std::move(private_tree));
    }

    // the race pair: both spend the attacker's first matured coinbase
    const Amount fee = cfg.payment_fee;
    const Amount amount = block_subsidy(1, cfg.params) - fee;
    const ChainState& state0 = sim.tree(attacker).state();
    Address merchant_addr = encode_address(
        kVersionP2PKH, hash20(ByteSpan(sim.miner_key(merchant).public_key.bytes)));
    Address self_addr = encode_address(
        kVersionP2PKH, hash20(ByteSpan(sim.miner_key(attacker).public_key.bytes)));

    Wallet& attacker_wallet = sim.wallet(attacker);
    Transaction tx_pay = attacker_wallet.build_payment(state0, merchant_addr, amount, fee);
    Transaction tx_double;
    tx_double.inputs = tx_pay.inputs;  // same outpoint, conflicting by construction
    tx_double.outputs.push_back(
        TxOutput{amount, make_p2pkh(self_addr.payload)});
    tx_pay = attacker_wallet.sign_all(state0, tx_pay);
    tx_double = attacker_wallet.sign_all(state0, tx_double);

    const Digest32 pay_id = txid(tx_pay);
    const Digest32 double_id = txid(tx_double);

    // tx_double never touches a mempool: it rides only in private blocks
    sim.set_forced_txs(attacker, {tx_double});
    sim.schedule_tx(start_ms, merchant, tx_pay);

    struct Controller {
        unsigned z = 0;
        unsigned give_up_lead = 0;
        Digest32 pay_id;
        uint64_t settle_ms = 0;
        bool attack_live = true;
        bool released = false;
        uint64_t decided_at = 0;
        uint32_t last_merchant_height = 0xFFFFFFFF;
        int confs = -1;  // -1: not seen
    } ctl;
    ctl.z = cfg.adversary.confirmations_z;
    ctl.give_up_lead = cfg.adversary.give_up_lead;
    ctl.pay_id = pay_id;
    ctl.settle_ms = 2 * cfg.latency_ms + 2 * cfg.params.target_spacing * 1000;

    sim.publish_filter = [&](unsigned node, const Block&) {
        return node != attacker || !ctl.attack_live;
    };

    sim.after_event = [&](Simulator& s) {
        if (!ctl.attack_live) {
            if (ctl.decided_at && s.now_ms() >= ctl.decided_at + ctl.settle_ms) s.stop();
            return;
        }

        const BlockTree& honest_view = s.tree(merchant);
        uint32_t merchant_height = honest_view.state().height();
        if (merchant_height != ctl.last_merchant_height || ctl.confs < 0) {
            ctl.last_merchant_height = merchant_height;
            auto h = tx_height_on_active(honest_view, ctl.pay_id);
            if (h)
                ctl.confs = int(merchant_height - *h + 1);
            else
                ctl.confs = s.mempool_contains(merchant, ctl.pay_id) ? 0 : -1;
        }
        bool merchant_paid = ctl.z == 0 ? ctl.confs >= 0 : ctl.confs >= int(ctl.z);
        if (!merchant_paid) return;

        const BlockTree* priv = s.mining_tree(attacker);
        if (!priv) return;

        if (priv->state().cumulative_work() > honest_view.state().cumulative_work()) {
            // publish the private branch, oldest first
            const auto& summaries = priv->state().summaries();
            for (uint32_t h = prefix_len + 1; h < summaries.size(); ++h)
                s.broadcast_block(attacker, summaries[h].hash);
            ctl.released = true;
            ctl.attack_live = false;
            ctl.decided_at = s.now_ms();
            s.clear_mining_tree(attacker);
            s.set_forced_txs(attacker, {});
            return;
        }

        uint32_t private_height = priv->state().height();
        if (merchant_height > private_height &&
            merchant_height - private_height >= ctl.give_up_lead) {
            ctl.attack_live = false;
            ctl.decided_at = s.now_ms();
            s.clear_mining_tree(attacker);
            s.set_forced_txs(attacker, {});
        }
    };

    SimReport sim_report = sim.run();

    DoubleSpendReport report;
    report.z = cfg.adversary.confirmations_z;
    report.released = ctl.released;
    report.pay_txid = hex_encode(pay_id);
    report.double_txid = hex_encode(double_id);

    const BlockTree& final_view = sim.tree(merchant);
    auto pay_h = tx_height_on_active(final_view, pay_id);
    auto double_h = tx_height_on_active(final_view, double_id);
    report.exactly_one_confirmed = pay_h.has_value() != double_h.has_value();
    report.active_chain_clean = active_chain_spends_once(final_view);
    report.success = double_h.has_value();
    if (pay_h) report.confirmed_txid = report.pay_txid;
    if (double_h) report.confirmed_txid = report.double_txid;
    report.final_height = final_view.state().height();

    std::map<Digest32, unsigned> miner_of;
    for (const auto& m : sim_report.mined) miner_of.emplace(m.hash, m.miner);
    for (const auto& s : final_view.state().summaries()) {
        auto it = miner_of.find(s.hash);
        if (it != miner_of.end() && it->second == attacker) ++report.attacker_blocks;
    }
    return report;
}

std::string DoubleSpendReport::to_text() const {
    std::ostringstream out;
    out << "z=" << z << "\n";
    out << "success=" << (success ? 1 : 0) << "\n";
    out << "released=" << (released ? 1 : 0) << "\n";
    out << "pay_txid=" << pay_txid << "\n";
    out << "double_txid=" << double_txid << "\n";
    out << "confirmed_txid=" << confirmed_txid << "\n";
    out << "exactly_one_confirmed=" << (exactly_one_confirmed ? 1 : 0) << "\n";
    out << "active_chain_clean=" << (active_chain_clean ? 1 : 0) << "\n";
    out << "final_height=" << final_height << "\n";
    return out.str();
}

std::string DoubleSpendReport::to_json_text() const {
    nlohmann::ordered_json j{{"z", z},
                             {"success", success},
                             {"released", released},
                             {"pay_txid", pay_txid},
                             {"double_txid", double_txid},
                             {"confirmed_txid", confirmed_txid},
                             {"exactly_one_confirmed", exactly_one_confirmed},
                             {"active_chain_clean", active_chain_clean},
                             {"final_height", final_height}};
    return j.dump(2);
}

WithholdReport run_withhold(const ScenarioConfig& base_cfg) {
    ScenarioConfig cfg = base_cfg;
    cfg.adversary.kind = AdversaryConfig::Kind::withhold;
    cfg.payment_count = 0;
    cfg.mine_until_ms = cfg.duration_ms;
    std::string problem = cfg.validate();
    if (!problem.empty()) throw std::invalid_argument("scenario: " + problem);

    const unsigned attacker = 0;
    const unsigned observer = cfg.node_count > 1 ? 1 : 0;

    Simulator sim(cfg);
    split_hash_rate(sim, cfg);
    sim.set_mining_tree(attacker,
                        std::make_unique<BlockTree>(sim.genesis(), cfg.params));

    struct Controller {
        unsigned lead = 0;
        unsigned releases = 0;
        std::set<Digest32> published;
    } ctl;
    ctl.lead = cfg.adversary.withhold_lead;

    sim.publish_filter = [&](unsigned node, const Block&) { return node != attacker; };

    sim.after_event = [&](Simulator& s) {
        const BlockTree* priv = s.mining_tree(attacker);
        if (!priv) return;
        // the observer's chain stands in for "the public chain" when deciding
        // releases; rebasing is driven by the attacker's own view
        const BlockTree& honest_view = s.tree(observer);

        if (s.tree(attacker).state().cumulative_work() > priv->state().cumulative_work()) {
            // fell behind: adopt the best chain the attacker knows as the new
            // private root
            s.set_mining_tree(attacker, clone_active_chain(s.genesis(), s.tree(attacker).params(),
                                                           s.tree(attacker)));
            return;
        }

        uint32_t private_height = priv->state().height();
        uint32_t honest_height = honest_view.state().height();
        if (private_height >= honest_height + ctl.lead &&
            priv->state().cumulative_work() > honest_view.state().cumulative_work()) {
            const auto& summaries = priv->state().summaries();
            bool any = false;
            for (uint32_t h = 1; h < summaries.size(); ++h) {
                if (ctl.published.insert(summaries[h].hash).second) {
                    s.broadcast_block(attacker, summaries[h].hash);
                    any = true;
                }
            }
            if (any) ++ctl.releases;
        }
    };

    SimReport sim_report = sim.run();

    WithholdReport report;
    report.releases = ctl.releases;
    for (const auto& m : sim_report.mined) {
        if (m.miner == attacker)
            ++report.attacker_mined;
        else
            ++report.honest_mined;
    }
    const BlockTree& final_view = sim.tree(observer);
    const auto& summaries = final_view.state().summaries();
    report.final_height = final_view.state().height();
    std::map<Digest32, unsigned> miner_of;
    for (const auto& m : sim_report.mined) miner_of.emplace(m.hash, m.miner);
    uint64_t honest_on_chain = 0;
    for (uint32_t h = 1; h < summaries.size(); ++h) {
        auto it = miner_of.find(summaries[h].hash);
        if (it == miner_of.end()) continue;
        if (it->second == attacker)
            ++report.attacker_on_chain;
        else
            ++honest_on_chain;
    }
    report.honest_orphaned = report.honest_mined - honest_on_chain;
    return report;
}

std::string WithholdReport::to_text() const {
    std::ostringstream out;
    out << "releases=" << releases << "\n";
    out << "attacker_mined=" << attacker_mined << "\n";
    out << "honest_mined=" << honest_mined << "\n";
    out << "attacker_on_chain=" << attacker_on_chain << "\n";
    out << "honest_orphaned=" << honest_orphaned << "\n";
    out << "final_height=" << final_height << "\n";
    return out.str();
}

std::string WithholdReport::to_json_text() const {
    nlohmann::ordered_json j{{"releases", releases},
                             {"attacker_mined", attacker_mined},
                             {"honest_mined", honest_mined},
                             {"attacker_on_chain", attacker_on_chain},
                             {"honest_orphaned", honest_orphaned},
                             {"final_height", final_height}};
    return j.dump(2);
}

}  // namespace minichain
