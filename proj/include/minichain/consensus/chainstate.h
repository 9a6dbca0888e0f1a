// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CONSENSUS_CHAINSTATE_H
#define MINICHAIN_CONSENSUS_CHAINSTATE_H

#include <map>
#include <string_view>
#include <vector>

#include "minichain/core/block.h"
#include "minichain/core/params.h"
#include "minichain/util/u256.h"

namespace minichain {

/// Block rejection causes; each is independently testable.
/// Coinbase structural violations land on bad_subsidy; amount-range and
/// input-below-output violations land on value_overflow.
enum class BlockError {
    none,
    bad_pow,
    bad_link,
    bad_commitment,
    bad_time,
    double_spend,
    missing_utxo,
    immature_coinbase,
    script_reject,
    non_final,
    bad_subsidy,
    value_overflow,
};

std::string_view to_string(BlockError e);

struct UtxoEntry {
    TxOutput output;
    uint32_t height = 0;
    bool is_coinbase = false;

    bool operator==(const UtxoEntry&) const = default;
};

/// The set of unspent outputs; deterministic iteration order (sorted by
/// OutPoint) so digests and comparisons are canonical.
class UtxoSet {
public:
    const UtxoEntry* find(const OutPoint& op) const {
        auto it = entries_.find(op);
        return it == entries_.end() ? nullptr : &it->second;
    }
    bool contains(const OutPoint& op) const { return entries_.count(op) != 0; }
    void add(const OutPoint& op, UtxoEntry entry) { entries_.emplace(op, std::move(entry)); }
    void remove(const OutPoint& op) { entries_.erase(op); }

    std::size_t size() const { return entries_.size(); }
    Amount total_value() const;

    /// hash256 of the canonical serialization of every entry.
    Digest32 digest() const;

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    bool operator==(const UtxoSet&) const = default;

private:
    std::map<OutPoint, UtxoEntry> entries_;
};

/// Everything needed to undo one connected block.
struct UndoRecord {
    Digest32 block_hash;
    std::vector<std::pair<OutPoint, UtxoEntry>> spent;
    std::vector<OutPoint> created;

    bool operator==(const UndoRecord&) const = default;
};

/// Active-chain header facts kept per height for retarget and time rules.
struct BlockSummary {
    Digest32 hash;
    uint64_t time = 0;
    uint32_t bits = 0;

    bool operator==(const BlockSummary&) const = default;
};

/// The validated ledger: tip, cumulative work, UTXO set, undo records.
/// Single writer at a time; freely movable between threads.
class ChainState {
public:
    /// Applies a well-formed genesis block (PoW, commitment, single coinbase
    /// checked). Throws std::invalid_argument on a malformed genesis.
    static ChainState from_genesis(const Block& genesis, const ChainParams& params);

    const ChainParams& params() const { return params_; }
    const Digest32& tip_hash() const { return summaries_.back().hash; }
    uint32_t height() const { return uint32_t(summaries_.size() - 1); }
    uint64_t tip_time() const { return summaries_.back().time; }
    const U256& cumulative_work() const { return cumulative_work_; }
    const UtxoSet& utxos() const { return utxos_; }
    const std::vector<BlockSummary>& summaries() const { return summaries_; }
    const std::vector<UndoRecord>& undo_records() const { return undo_; }

    /// Consensus bits for the next block at the given height, derived from
    /// the active chain (periodic retarget with clamping).
    uint32_t expected_bits(uint32_t for_height) const;

    /// Full contextual validation of a block extending the current tip; on
    /// success the state is mutated and an undo record stored. On failure
    /// the state is untouched. `now` bounds header.time (<= now + 7200).
    BlockError validate_and_connect(const Block& block, uint64_t now);

    /// Exact inverse of the last connect. Fails (returns false) at genesis.
    bool disconnect_tip();

    bool operator==(const ChainState&) const;

    /// Digest over tip, height, work and the UTXO set; used by the
    /// simulator's ledger-agreement checks.
    Digest32 digest() const;

private:
    ChainState(const ChainParams& params) : params_(params) {}

    ChainParams params_;
    UtxoSet utxos_;
    std::vector<BlockSummary> summaries_;  // index == height
    std::vector<UndoRecord> undo_;
    U256 cumulative_work_;
};

}  // namespace minichain

#endif  // MINICHAIN_CONSENSUS_CHAINSTATE_H
