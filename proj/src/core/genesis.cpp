// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/core/genesis.h"

#include <stdexcept>

#include "minichain/consensus/pow.h"
#include "minichain/crypto/sha256.h"
#include "minichain/script/script.h"

namespace minichain {

Block make_genesis(const ChainParams& params, std::string_view message, uint64_t timestamp) {
    if (message.empty()) throw std::invalid_argument("genesis message must be non-empty");
    if (message.size() > kMaxGenesisMessage)
        throw std::invalid_argument("genesis message exceeds " +
                                    std::to_string(kMaxGenesisMessage) + " bytes");

    Transaction coinbase;
    coinbase.inputs.push_back(TxInput{OutPoint::coinbase_marker(), Script{to_bytes(message)}});
    // Nobody holds the preimage of this hash; the genesis subsidy stays put.
    coinbase.outputs.push_back(
        TxOutput{params.initial_subsidy, make_p2pkh(hash20(to_bytes(message)))});

    Block genesis;
    genesis.header.prev_hash = Digest32{};
    genesis.header.time = timestamp;
    genesis.header.bits = params.max_target_bits;
    genesis.transactions.push_back(std::move(coinbase));
    genesis.header.tx_commitment = tx_commitment(genesis.transactions);

    auto nonce = pow_search(genesis.header, params.max_target(), 0, 1'000'000);
    genesis.header.nonce = *nonce;  // max_target makes this a handful of tries
    return genesis;
}

std::string genesis_message(const Block& genesis) {
    return to_string(ByteSpan(genesis.transactions.at(0).inputs.at(0).script_sig.bytes));
}

}  // namespace minichain
