// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CONSENSUS_REPLAY_H
#define MINICHAIN_CONSENSUS_REPLAY_H

#include "minichain/consensus/chainstate.h"

namespace minichain {

struct ReplayResult {
    bool ok = false;
    uint32_t fail_height = 0;  // first height at which validation failed
    BlockError error = BlockError::none;
    std::optional<ChainState> state;  // present when ok
};

/// Full revalidation from genesis. When expected_hashes is non-empty each
/// block's hash is also checked against it (the stored index), so any
/// mutation is caught no later than the mutated height.
ReplayResult replay_chain(const std::vector<Block>& blocks, const ChainParams& params,
                          const std::vector<Digest32>& expected_hashes = {});

}  // namespace minichain

#endif  // MINICHAIN_CONSENSUS_REPLAY_H
