// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CONSENSUS_MINER_H
#define MINICHAIN_CONSENSUS_MINER_H

#include "minichain/consensus/chainstate.h"

namespace minichain {

/// Builds a valid block on the state's tip: coinbase pays subsidy plus the
/// fees of every included transaction to coinbase_script, candidates are
/// included oldest-first (skipping any that do not resolve, are immature or
/// not final at `time`), bits follow the retarget schedule and the nonce is
/// solved against the real target. The coinbase input script carries the
/// height and extra_nonce so coinbase txids never collide.
Block assemble_block(const ChainState& state, const std::vector<Transaction>& candidates,
                     const Script& coinbase_script, uint64_t time, uint64_t extra_nonce);

}  // namespace minichain

#endif  // MINICHAIN_CONSENSUS_MINER_H
