// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/consensus/blocktree.h"

#include <algorithm>
#include <stdexcept>

#include "minichain/consensus/pow.h"

namespace minichain {

std::string_view to_string(AcceptResult::Status s) {
    switch (s) {
        case AcceptResult::Status::connected: return "connected";
        case AcceptResult::Status::reorged: return "reorged";
        case AcceptResult::Status::side_branch: return "side-branch";
        case AcceptResult::Status::orphaned: return "orphaned";
        case AcceptResult::Status::duplicate: return "duplicate";
        case AcceptResult::Status::rejected: return "rejected";
    }
    return "unknown";
}

BlockTree::BlockTree(const Block& genesis, const ChainParams& params)
    : state_(ChainState::from_genesis(genesis, params)) {
    Entry entry{genesis, 0, chain_work(bits_to_target(genesis.header.bits))};
    index_.emplace(state_.tip_hash(), std::move(entry));
}

const Block* BlockTree::find_block(const Digest32& hash) const {
    auto it = index_.find(hash);
    return it == index_.end() ? nullptr : &it->second.block;
}

std::optional<uint32_t> BlockTree::block_height(const Digest32& hash) const {
    auto it = index_.find(hash);
    if (it == index_.end()) return std::nullopt;
    return it->second.height;
}

bool BlockTree::on_active_chain(const Digest32& hash) const {
    auto it = index_.find(hash);
    if (it == index_.end()) return false;
    const auto& summaries = state_.summaries();
    uint32_t h = it->second.height;
    return h < summaries.size() && summaries[h].hash == hash;
}

AcceptResult BlockTree::accept_block(const Block& block, uint64_t now) {
    AcceptResult result = accept_one(block, now);
    if (result.status == AcceptResult::Status::connected ||
        result.status == AcceptResult::Status::reorged ||
        result.status == AcceptResult::Status::side_branch) {
        process_orphans(result.hash, now, result);
    }
    return result;
}

AcceptResult BlockTree::accept_one(const Block& block, uint64_t now) {
    AcceptResult result;
    result.hash = block_hash(block.header);

    if (index_.count(result.hash)) {
        result.status = AcceptResult::Status::duplicate;
        return result;
    }

    // context-free sanity: the header must carry valid work on its face
    if (!check_pow(block.header, state_.params())) {
        result.status = AcceptResult::Status::rejected;
        result.error = BlockError::bad_pow;
        return result;
    }

    auto parent = index_.find(block.header.prev_hash);
    if (parent == index_.end()) {
        if (orphans_.size() >= kMaxOrphans) orphans_.pop_front();
        orphans_.push_back(block);
        result.status = AcceptResult::Status::orphaned;
        return result;
    }

    const uint32_t height = parent->second.height + 1;
    const U256 cum_work =
        parent->second.cum_work + chain_work(bits_to_target(block.header.bits));

    if (block.header.prev_hash == state_.tip_hash()) {
        BlockError err = state_.validate_and_connect(block, now);
        if (err != BlockError::none) {
            result.status = AcceptResult::Status::rejected;
            result.error = err;
            return result;
        }
        index_.emplace(result.hash, Entry{block, height, cum_work});
        result.status = AcceptResult::Status::connected;
        result.connected.push_back(result.hash);
        return result;
    }

    // side branch; store first, then see if it out-works the active tip
    index_.emplace(result.hash, Entry{block, height, cum_work});
    if (cum_work > state_.cumulative_work()) {
        adopt_branch(result.hash, now, result);
    } else {
        result.status = AcceptResult::Status::side_branch;
    }
    return result;
}

void BlockTree::adopt_branch(const Digest32& new_tip_hash, uint64_t now,
                             AcceptResult& result) {
    // walk the candidate branch back to the active chain
    std::vector<const Entry*> branch;  // newest first
    Digest32 cursor = new_tip_hash;
    while (!on_active_chain(cursor)) {
        auto it = index_.find(cursor);
        if (it == index_.end()) throw std::logic_error("branch ancestor missing from index");
        branch.push_back(&it->second);
        cursor = it->second.block.header.prev_hash;
    }
    const uint32_t fork_height = index_.find(cursor)->second.height;

    // disconnect down to the fork point, remembering what came off
    std::vector<Digest32> removed;
    while (state_.height() > fork_height) {
        removed.push_back(state_.tip_hash());
        if (!state_.disconnect_tip()) throw std::logic_error("disconnect refused mid-reorg");
    }

    // connect the branch oldest-first
    std::vector<Digest32> added;
    BlockError failure = BlockError::none;
    for (auto it = branch.rbegin(); it != branch.rend(); ++it) {
        failure = state_.validate_and_connect((*it)->block, now);
        if (failure != BlockError::none) break;
        added.push_back(block_hash((*it)->block.header));
    }

    if (failure == BlockError::none) {
        result.status = AcceptResult::Status::reorged;
        result.disconnected.assign(removed.rbegin(), removed.rend());
        result.connected = added;
        return;
    }

    // the branch contained an invalid block: drop the whole branch and
    // restore the original chain, which must reconnect cleanly
    for (std::size_t i = added.size(); i > 0; --i)
        if (!state_.disconnect_tip()) throw std::logic_error("rollback disconnect refused");
    std::vector<Digest32> branch_hashes;
    for (const Entry* e : branch) branch_hashes.push_back(block_hash(e->block.header));
    for (const Digest32& h : branch_hashes) index_.erase(h);

    for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
        BlockError err = state_.validate_and_connect(index_.find(*it)->second.block, now);
        if (err != BlockError::none)
            throw std::logic_error("previously valid chain failed to reconnect");
    }
    result.status = AcceptResult::Status::rejected;
    result.error = failure;
}

void BlockTree::process_orphans(const Digest32& parent_hash, uint64_t now,
                                AcceptResult& result) {
    std::vector<Digest32> ready{parent_hash};
    while (!ready.empty()) {
        Digest32 parent = ready.back();
        ready.pop_back();
        for (auto it = orphans_.begin(); it != orphans_.end();) {
            if (it->header.prev_hash == parent) {
                Block orphan = std::move(*it);
                it = orphans_.erase(it);
                AcceptResult sub = accept_one(orphan, now);
                result.disconnected.insert(result.disconnected.end(),
                                           sub.disconnected.begin(), sub.disconnected.end());
                result.connected.insert(result.connected.end(), sub.connected.begin(),
                                        sub.connected.end());
                if (sub.status == AcceptResult::Status::connected ||
                    sub.status == AcceptResult::Status::reorged ||
                    sub.status == AcceptResult::Status::side_branch)
                    ready.push_back(sub.hash);
                it = orphans_.begin();  // restart; the deque changed
            } else {
                ++it;
            }
        }
    }
}

}  // namespace minichain
