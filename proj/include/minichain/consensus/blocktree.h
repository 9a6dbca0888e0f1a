// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CONSENSUS_BLOCKTREE_H
#define MINICHAIN_CONSENSUS_BLOCKTREE_H

#include <deque>
#include <map>

#include "minichain/consensus/chainstate.h"

namespace minichain {

constexpr std::size_t kMaxOrphans = 1000;

struct AcceptResult {
    enum class Status {
        connected,    // extended the active tip
        reorged,      // switched to a higher-work branch
        side_branch,  // stored off the active chain (not more work)
        orphaned,     // parent unknown; held until it arrives
        duplicate,    // already known
        rejected,     // invalid; state unchanged
    };

    Status status = Status::rejected;
    BlockError error = BlockError::none;
    Digest32 hash;

    // Every block leaving/joining the active chain in this call, including
    // cascaded orphan connections; oldest first. Drives mempool updates.
    std::vector<Digest32> disconnected;
    std::vector<Digest32> connected;
};

std::string_view to_string(AcceptResult::Status s);

/// Forest of known blocks plus the active ChainState. Fork choice: the
/// active tip always has maximal cumulative work; equal-work ties keep the
/// first-seen tip.
class BlockTree {
public:
    BlockTree(const Block& genesis, const ChainParams& params);

    AcceptResult accept_block(const Block& block, uint64_t now);

    const ChainState& state() const { return state_; }
    const ChainParams& params() const { return state_.params(); }

    const Block* find_block(const Digest32& hash) const;
    /// Height within its own branch (not necessarily active).
    std::optional<uint32_t> block_height(const Digest32& hash) const;
    bool on_active_chain(const Digest32& hash) const;

    std::size_t known_blocks() const { return index_.size(); }
    std::size_t orphan_pool_size() const { return orphans_.size(); }

private:
    struct Entry {
        Block block;
        uint32_t height = 0;
        U256 cum_work;
    };

    AcceptResult accept_one(const Block& block, uint64_t now);
    void adopt_branch(const Digest32& new_tip_hash, uint64_t now, AcceptResult& result);
    void process_orphans(const Digest32& parent_hash, uint64_t now, AcceptResult& result);

    std::map<Digest32, Entry> index_;
    std::deque<Block> orphans_;
    ChainState state_;
};

}  // namespace minichain

#endif  // MINICHAIN_CONSENSUS_BLOCKTREE_H
