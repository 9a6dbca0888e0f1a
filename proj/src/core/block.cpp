// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/core/block.h"

#include <stdexcept>

#include "minichain/core/serialize.h"
#include "minichain/crypto/sha256.h"

namespace minichain {

Digest32 block_hash(const BlockHeader& header) {
    return hash256(serialize_header(header));
}

Digest32 tx_commitment_from_ids(const std::vector<Digest32>& ids) {
    if (ids.empty()) throw std::invalid_argument("tx_commitment: empty transaction list");
    Bytes concat;
    concat.reserve(ids.size() * 32);
    for (const auto& id : ids) concat.insert(concat.end(), id.bytes.begin(), id.bytes.end());
    return hash256(concat);
}

Digest32 tx_commitment(const std::vector<Transaction>& txs) {
    std::vector<Digest32> ids;
    ids.reserve(txs.size());
    for (const auto& tx : txs) ids.push_back(txid(tx));
    return tx_commitment_from_ids(ids);
}

}  // namespace minichain
