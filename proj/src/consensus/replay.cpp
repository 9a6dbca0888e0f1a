// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/consensus/replay.h"

#include <stdexcept>

namespace minichain {

ReplayResult replay_chain(const std::vector<Block>& blocks, const ChainParams& params,
                          const std::vector<Digest32>& expected_hashes) {
    ReplayResult result;
    if (blocks.empty()) {
        result.error = BlockError::bad_link;
        return result;
    }

    auto hash_expected = [&](uint32_t height, const Digest32& actual) {
        if (expected_hashes.empty()) return true;
        return height < expected_hashes.size() && expected_hashes[height] == actual;
    };

    if (!hash_expected(0, block_hash(blocks[0].header))) {
        result.fail_height = 0;
        result.error = BlockError::bad_link;
        return result;
    }

    std::optional<ChainState> state;
    try {
        state = ChainState::from_genesis(blocks[0], params);
    } catch (const std::invalid_argument&) {
        result.fail_height = 0;
        result.error = BlockError::bad_pow;
        return result;
    }

    for (uint32_t h = 1; h < blocks.size(); ++h) {
        if (!hash_expected(h, block_hash(blocks[h].header))) {
            result.fail_height = h;
            result.error = BlockError::bad_link;
            return result;
        }
        BlockError err = state->validate_and_connect(blocks[h], blocks[h].header.time);
        if (err != BlockError::none) {
            result.fail_height = h;
            result.error = err;
            return result;
        }
    }

    result.ok = true;
    result.state = std::move(state);
    return result;
}

}  // namespace minichain
