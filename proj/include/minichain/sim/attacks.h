// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_SIM_ATTACKS_H
#define MINICHAIN_SIM_ATTACKS_H

#include "minichain/sim/simulator.h"

namespace minichain {

/// Outcome of one double-spend race. The attacker pays a merchant, waits for
/// z confirmations on the honest chain while privately mining a conflicting
/// branch, and releases it once it carries more work.
struct DoubleSpendReport {
    unsigned z = 0;
    bool success = false;   // the conflicting tx won
    bool released = false;  // the private branch was ever published
    std::string pay_txid;
    std::string double_txid;
    std::string confirmed_txid;  // whichever landed on the final active chain
    bool exactly_one_confirmed = false;
    bool active_chain_clean = false;  // full-history scan: no outpoint spent twice
    uint32_t final_height = 0;
    uint32_t attacker_blocks = 0;

    std::string to_text() const;
    std::string to_json_text() const;
};

DoubleSpendReport run_double_spend(const ScenarioConfig& cfg);

/// Raw counts from a block-withholding run: the attacker mines privately and
/// releases its branch whenever it is `withhold_lead` blocks ahead.
struct WithholdReport {
    unsigned releases = 0;
    uint64_t attacker_mined = 0;
    uint64_t honest_mined = 0;
    uint64_t attacker_on_chain = 0;
    uint64_t honest_orphaned = 0;
    uint32_t final_height = 0;

    std::string to_text() const;
    std::string to_json_text() const;
};

WithholdReport run_withhold(const ScenarioConfig& cfg);

/// Height of the block containing txid on the tree's active chain.
std::optional<uint32_t> tx_height_on_active(const BlockTree& tree, const Digest32& txid);

}  // namespace minichain

#endif  // MINICHAIN_SIM_ATTACKS_H
