// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CONSENSUS_POW_H
#define MINICHAIN_CONSENSUS_POW_H

#include <optional>

#include "minichain/core/block.h"
#include "minichain/core/params.h"
#include "minichain/util/u256.h"

namespace minichain {

/// Compact target: 1-byte exponent E, 3-byte mantissa M; the expanded
/// target is M * 256^(E-3). Round-trips up to mantissa precision.
U256 bits_to_target(uint32_t bits);
uint32_t target_to_bits(const U256& target);

/// The comparison at the heart of proof of work: the hash read as a
/// big-endian integer must be <= target. Inclusive on purpose.
bool hash_meets_target(const Digest32& hash, const U256& target);

/// True iff block_hash(header) meets the expanded target of header.bits and
/// that target is within params.max_target.
bool check_pow(const BlockHeader& header, const ChainParams& params);

/// Periodic adjustment: new = old * clamp(actual/expected, 1/clamp, clamp),
/// clipped to max_target. Throws std::invalid_argument on zero timespan.
U256 retarget(const U256& old_target, uint64_t actual_timespan, const ChainParams& params);

/// Expected hash attempts to find a block at this target:
/// floor(2^256 / (target + 1)). Lower target => strictly more work.
/// Throws std::invalid_argument on zero target.
U256 chain_work(const U256& target);

/// Sequential nonce search from start_nonce using the best available
/// hash kernel; returns the first satisfying nonce, or nullopt after
/// max_attempts. Every kernel returns the identical nonce.
std::optional<uint64_t> pow_search(const BlockHeader& header, const U256& target,
                                   uint64_t start_nonce, uint64_t max_attempts);

}  // namespace minichain

#endif  // MINICHAIN_CONSENSUS_POW_H
