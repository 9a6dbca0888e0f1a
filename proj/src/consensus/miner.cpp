// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/consensus/miner.h"

#include <map>
#include <set>

#include "minichain/consensus/pow.h"
#include "minichain/consensus/subsidy.h"
#include "minichain/script/interpreter.h"

namespace minichain {

Block assemble_block(const ChainState& state, const std::vector<Transaction>& candidates,
                     const Script& coinbase_script, uint64_t time, uint64_t extra_nonce) {
    const uint32_t new_height = state.height() + 1;

    std::vector<Transaction> included;
    std::map<OutPoint, TxOutput> in_block;
    std::set<OutPoint> spent;
    Amount fees = 0;

    for (const Transaction& tx : candidates) {
        if (tx.is_coinbase() || tx.inputs.empty() || tx.outputs.empty()) continue;
        if (!is_final(tx, time)) continue;

        Amount in_sum = 0;
        bool ok = true;
        for (const auto& in : tx.inputs) {
            if (spent.count(in.prevout)) {
                ok = false;
                break;
            }
            if (auto it = in_block.find(in.prevout); it != in_block.end()) {
                in_sum += it->second.amount;
                continue;
            }
            const UtxoEntry* entry = state.utxos().find(in.prevout);
            if (!entry ||
                (entry->is_coinbase &&
                 new_height < entry->height + state.params().coinbase_maturity)) {
                ok = false;
                break;
            }
            in_sum += entry->output.amount;
        }
        if (!ok || in_sum < tx.total_output()) continue;

        for (const auto& in : tx.inputs) spent.insert(in.prevout);
        Digest32 id = txid(tx);
        for (uint32_t i = 0; i < tx.outputs.size(); ++i)
            in_block.emplace(OutPoint{id, i}, tx.outputs[i]);
        fees += in_sum - tx.total_output();
        included.push_back(tx);
    }

    Block block;
    block.header.prev_hash = state.tip_hash();
    block.header.time = time;
    block.header.bits = state.expected_bits(new_height);

    for (uint64_t attempt = 0;; ++attempt) {
        Transaction coinbase;
        Bytes tag_bytes;
        append_u32(tag_bytes, new_height);
        append_u64(tag_bytes, extra_nonce + attempt);
        coinbase.inputs.push_back(TxInput{OutPoint::coinbase_marker(), Script{tag_bytes}});
        coinbase.outputs.push_back(
            TxOutput{block_subsidy(new_height, state.params()) + fees, coinbase_script});

        block.transactions.clear();
        block.transactions.push_back(std::move(coinbase));
        block.transactions.insert(block.transactions.end(), included.begin(), included.end());
        block.header.tx_commitment = tx_commitment(block.transactions);

        auto nonce = pow_search(block.header, bits_to_target(block.header.bits), 0, 1u << 22);
        if (nonce) {
            block.header.nonce = *nonce;
            return block;
        }
        // nonce space exhausted at this coinbase; vary the extra nonce
    }
}

}  // namespace minichain
