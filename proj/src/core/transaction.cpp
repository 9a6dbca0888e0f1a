// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/core/transaction.h"

#include <stdexcept>

#include "minichain/core/serialize.h"
#include "minichain/crypto/sha256.h"

namespace minichain {

Digest32 txid(const Transaction& tx) {
    return hash256(serialize_tx(tx));
}

Digest32 sighash(const Transaction& tx, std::size_t input_index) {
    if (input_index >= tx.inputs.size())
        throw std::out_of_range("sighash: input index " + std::to_string(input_index) +
                                " out of range");

    // Signatures cover the transaction with all unlock scripts cleared, so a
    // signature can be placed into the script_sig it authorizes.
    Transaction cleared = tx;
    for (auto& in : cleared.inputs) in.script_sig = Script{};

    Bytes preimage = serialize_tx(cleared);
    append_u32(preimage, uint32_t(input_index));
    append_u32(preimage, 1);  // sighash type ALL
    return hash256(preimage);
}

std::string format_amount(Amount a) {
    bool negative = a < 0;
    uint64_t v = negative ? uint64_t(-a) : uint64_t(a);
    std::string whole = std::to_string(v / uint64_t(kCoin));
    std::string frac = std::to_string(v % uint64_t(kCoin));
    frac.insert(frac.begin(), 8 - frac.size(), '0');
    return (negative ? "-" : "") + whole + "." + frac;
}

}  // namespace minichain
