// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_SIM_SCENARIO_H
#define MINICHAIN_SIM_SCENARIO_H

#include <string>

#include "minichain/core/genesis.h"
#include "minichain/core/params.h"

namespace minichain {

enum class Topology { complete, ring, star };

std::string_view to_string(Topology t);

struct AdversaryConfig {
    enum class Kind { none, double_spend, withhold };

    Kind kind = Kind::none;
    unsigned confirmations_z = 0;     // double-spend: merchant's confirmation policy
    double attacker_fraction = 0.1;   // share of total hash rate
    unsigned withhold_lead = 2;       // withhold: private lead before release
    unsigned give_up_lead = 8;        // double-spend: abandon when this far behind
};

/// Everything that determines a run; the seed fully determines the output.
/// Times are stored in integer milliseconds so parsing is exact.
struct ScenarioConfig {
    uint64_t seed = 1;
    unsigned node_count = 4;
    Topology topology = Topology::complete;
    uint64_t latency_ms = 100;
    double hash_rate = 16.0;  // attempts/second per mining node (total under an adversary)
    uint64_t duration_ms = 60'000;
    ChainParams params;  // simnet defaults
    AdversaryConfig adversary;

    // optional machinery the acceptance scenarios need
    uint64_t rate_change_time_ms = 0;  // 0 = never
    double rate_change_factor = 1.0;
    unsigned payment_count = 0;
    uint64_t payment_interval_ms = 5'000;
    Amount payment_amount = kCoin;
    Amount payment_fee = kCoin / 100;
    uint64_t mine_until_ms = 0;  // 0 = duration minus a gossip drain window
    std::string genesis_message = std::string(kDefaultGenesisMessage);

    /// Empty string when valid, else the first problem found.
    std::string validate() const;

    /// Flat key=value form (stable ordering); the CLI scenario file format.
    std::string to_kv_text() const;

    /// Parses key=value lines; '#' starts a comment. Unknown keys are
    /// rejected. Throws std::invalid_argument with the offending line.
    static ScenarioConfig from_kv_text(const std::string& text);
};

}  // namespace minichain

#endif  // MINICHAIN_SIM_SCENARIO_H
