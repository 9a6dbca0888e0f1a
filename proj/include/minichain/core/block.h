// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CORE_BLOCK_H
#define MINICHAIN_CORE_BLOCK_H

#include <vector>

#include "minichain/core/transaction.h"

namespace minichain {

struct BlockHeader {
    uint32_t version = 1;
    Digest32 prev_hash;       // all zeros for genesis
    Digest32 tx_commitment;   // hash256 of concatenated txids
    uint64_t time = 0;        // simulated seconds
    uint32_t bits = 0;        // compact target
    uint64_t nonce = 0;

    auto operator<=>(const BlockHeader&) const = default;
};

struct Block {
    BlockHeader header;
    std::vector<Transaction> transactions;  // non-empty, first is coinbase

    auto operator<=>(const Block&) const = default;
};

/// hash256 of the 88-byte canonical header; the body is never hashed here.
Digest32 block_hash(const BlockHeader& header);

/// hash256 of all txids concatenated in block order. Throws
/// std::invalid_argument on an empty list.
Digest32 tx_commitment(const std::vector<Transaction>& txs);
Digest32 tx_commitment_from_ids(const std::vector<Digest32>& ids);

}  // namespace minichain

#endif  // MINICHAIN_CORE_BLOCK_H
