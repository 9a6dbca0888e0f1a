// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CORE_TRANSACTION_H
#define MINICHAIN_CORE_TRANSACTION_H

#include <compare>
#include <vector>

#include "minichain/core/amount.h"
#include "minichain/script/script.h"
#include "minichain/util/bytes.h"

namespace minichain {

/// Reference to a previous transaction's output.
struct OutPoint {
    Digest32 txid;
    uint32_t index = 0;

    auto operator<=>(const OutPoint&) const = default;

    static constexpr uint32_t kCoinbaseIndex = 0xFFFFFFFF;

    /// The coinbase marker: zero txid, index 0xFFFFFFFF.
    static OutPoint coinbase_marker() { return OutPoint{Digest32{}, kCoinbaseIndex}; }
    bool is_coinbase_marker() const {
        return index == kCoinbaseIndex && txid.is_zero();
    }
};

struct TxInput {
    OutPoint prevout;
    Script script_sig;

    auto operator<=>(const TxInput&) const = default;
};

struct TxOutput {
    Amount amount = 0;
    Script script_pubkey;

    auto operator<=>(const TxOutput&) const = default;
};

struct Transaction {
    uint32_t version = 1;
    uint64_t lock_time = 0;  // simulated seconds; 0 = always final
    std::vector<TxInput> inputs;
    std::vector<TxOutput> outputs;

    auto operator<=>(const Transaction&) const = default;

    bool is_coinbase() const {
        return inputs.size() == 1 && inputs[0].prevout.is_coinbase_marker();
    }

    Amount total_output() const {
        Amount sum = 0;
        for (const auto& out : outputs) sum += out.amount;
        return sum;
    }
};

/// hash256 of the canonical serialization.
Digest32 txid(const Transaction& tx);

/// Digest committed by input signatures: the transaction with every
/// script_sig cleared, followed by the input index and sighash type 1.
/// Throws std::out_of_range for a bad index.
Digest32 sighash(const Transaction& tx, std::size_t input_index);

}  // namespace minichain

#endif  // MINICHAIN_CORE_TRANSACTION_H
