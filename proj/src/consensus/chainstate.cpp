// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/consensus/chainstate.h"

#include <set>
#include <stdexcept>

#include "minichain/consensus/pow.h"
#include "minichain/consensus/subsidy.h"
#include "minichain/core/serialize.h"
#include "minichain/crypto/sha256.h"
#include "minichain/script/interpreter.h"

namespace minichain {

std::string_view to_string(BlockError e) {
    switch (e) {
        case BlockError::none: return "none";
        case BlockError::bad_pow: return "bad-pow";
        case BlockError::bad_link: return "bad-link";
        case BlockError::bad_commitment: return "bad-commitment";
        case BlockError::bad_time: return "bad-time";
        case BlockError::double_spend: return "double-spend";
        case BlockError::missing_utxo: return "missing-utxo";
        case BlockError::immature_coinbase: return "immature-coinbase";
        case BlockError::script_reject: return "script-reject";
        case BlockError::non_final: return "non-final";
        case BlockError::bad_subsidy: return "bad-subsidy";
        case BlockError::value_overflow: return "value-overflow";
    }
    return "unknown";
}

Amount UtxoSet::total_value() const {
    Amount total = 0;
    for (const auto& [op, entry] : entries_) total += entry.output.amount;
    return total;
}

Digest32 UtxoSet::digest() const {
    Bytes data;
    for (const auto& [op, entry] : entries_) {
        data.insert(data.end(), op.txid.bytes.begin(), op.txid.bytes.end());
        append_u32(data, op.index);
        append_u64(data, uint64_t(entry.output.amount));
        append_u32(data, uint32_t(entry.output.script_pubkey.bytes.size()));
        data.insert(data.end(), entry.output.script_pubkey.bytes.begin(),
                    entry.output.script_pubkey.bytes.end());
        append_u32(data, entry.height);
        data.push_back(entry.is_coinbase ? 1 : 0);
    }
    return hash256(data);
}

ChainState ChainState::from_genesis(const Block& genesis, const ChainParams& params) {
    if (genesis.transactions.size() != 1 || !genesis.transactions[0].is_coinbase())
        throw std::invalid_argument("genesis must hold exactly one coinbase");
    if (!genesis.header.prev_hash.is_zero())
        throw std::invalid_argument("genesis prev_hash must be zero");
    if (genesis.header.bits != params.max_target_bits || !check_pow(genesis.header, params))
        throw std::invalid_argument("genesis fails proof of work");
    if (tx_commitment(genesis.transactions) != genesis.header.tx_commitment)
        throw std::invalid_argument("genesis commitment mismatch");

    ChainState state(params);
    state.summaries_.push_back(
        {block_hash(genesis.header), genesis.header.time, genesis.header.bits});
    state.cumulative_work_ = chain_work(bits_to_target(genesis.header.bits));

    Digest32 id = txid(genesis.transactions[0]);
    for (uint32_t i = 0; i < genesis.transactions[0].outputs.size(); ++i)
        state.utxos_.add(OutPoint{id, i}, {genesis.transactions[0].outputs[i], 0, true});
    return state;
}

uint32_t ChainState::expected_bits(uint32_t for_height) const {
    if (for_height == 0) return params_.max_target_bits;
    if (for_height > summaries_.size())
        throw std::out_of_range("expected_bits beyond next height");

    const BlockSummary& prev = summaries_[for_height - 1];
    if (for_height % params_.retarget_interval != 0) return prev.bits;

    const BlockSummary& window_first = summaries_[for_height - params_.retarget_interval];
    uint64_t actual = prev.time - window_first.time;
    if (actual == 0) actual = 1;
    U256 next = retarget(bits_to_target(prev.bits), actual, params_);
    return target_to_bits(next);
}

BlockError ChainState::validate_and_connect(const Block& block, uint64_t now) {
    const uint32_t new_height = height() + 1;

    if (block.header.bits != expected_bits(new_height)) return BlockError::bad_pow;
    if (!check_pow(block.header, params_)) return BlockError::bad_pow;
    if (block.header.prev_hash != tip_hash()) return BlockError::bad_link;
    if (block.transactions.empty()) return BlockError::bad_subsidy;
    if (tx_commitment(block.transactions) != block.header.tx_commitment)
        return BlockError::bad_commitment;
    if (block.header.time < tip_time() || block.header.time > now + 7200)
        return BlockError::bad_time;

    // exactly one coinbase, and it comes first
    if (!block.transactions[0].is_coinbase()) return BlockError::bad_subsidy;
    for (std::size_t t = 1; t < block.transactions.size(); ++t)
        for (const auto& in : block.transactions[t].inputs)
            if (in.prevout.is_coinbase_marker()) return BlockError::bad_subsidy;

    std::map<OutPoint, UtxoEntry> created;
    std::vector<std::pair<OutPoint, UtxoEntry>> spent_from_set;
    std::set<OutPoint> spent;
    __int128 fees = 0;

    for (std::size_t t = 0; t < block.transactions.size(); ++t) {
        const Transaction& tx = block.transactions[t];
        const bool coinbase = t == 0;

        if (tx.inputs.empty() || tx.outputs.empty()) return BlockError::value_overflow;
        if (!is_final(tx, block.header.time)) return BlockError::non_final;
        for (const auto& out : tx.outputs)
            if (!money_range(out.amount)) return BlockError::value_overflow;

        if (!coinbase) {
            __int128 in_sum = 0;
            for (std::size_t i = 0; i < tx.inputs.size(); ++i) {
                const OutPoint& prevout = tx.inputs[i].prevout;
                if (spent.count(prevout)) return BlockError::double_spend;

                UtxoEntry entry;
                bool from_block = false;
                if (auto it = created.find(prevout); it != created.end()) {
                    entry = it->second;
                    from_block = true;
                } else if (const UtxoEntry* e = utxos_.find(prevout)) {
                    entry = *e;
                } else {
                    return BlockError::missing_utxo;
                }

                if (entry.is_coinbase &&
                    new_height < entry.height + params_.coinbase_maturity)
                    return BlockError::immature_coinbase;

                EvalResult res =
                    eval(tx.inputs[i].script_sig, entry.output.script_pubkey, {tx, i});
                if (!res.accepted) return BlockError::script_reject;

                in_sum += entry.output.amount;
                spent.insert(prevout);
                if (from_block)
                    created.erase(prevout);
                else
                    spent_from_set.emplace_back(prevout, entry);
            }
            __int128 out_sum = 0;
            for (const auto& out : tx.outputs) out_sum += out.amount;
            if (in_sum < out_sum) return BlockError::value_overflow;
            fees += in_sum - out_sum;
        }

        Digest32 id = txid(tx);
        for (uint32_t i = 0; i < tx.outputs.size(); ++i) {
            OutPoint op{id, i};
            // duplicate creation would corrupt the set (BIP30-style)
            if (utxos_.contains(op) || created.count(op) || spent.count(op))
                return BlockError::double_spend;
            created.emplace(op, UtxoEntry{tx.outputs[i], new_height, coinbase});
        }
    }

    Amount coinbase_total = block.transactions[0].total_output();
    Amount allowed = block_subsidy(new_height, params_) + Amount(fees);
    if (coinbase_total > allowed) return BlockError::bad_subsidy;

    // all checks passed; apply
    UndoRecord undo;
    undo.block_hash = block_hash(block.header);
    undo.spent = std::move(spent_from_set);
    for (const auto& [op, entry] : undo.spent) utxos_.remove(op);
    for (const auto& [op, entry] : created) {
        utxos_.add(op, entry);
        undo.created.push_back(op);
    }
    undo_.push_back(std::move(undo));
    summaries_.push_back({block_hash(block.header), block.header.time, block.header.bits});
    cumulative_work_ += chain_work(bits_to_target(block.header.bits));
    return BlockError::none;
}

bool ChainState::disconnect_tip() {
    if (summaries_.size() <= 1 || undo_.empty()) return false;

    const UndoRecord& undo = undo_.back();
    for (const auto& op : undo.created) utxos_.remove(op);
    for (const auto& [op, entry] : undo.spent) utxos_.add(op, entry);

    cumulative_work_ -= chain_work(bits_to_target(summaries_.back().bits));
    summaries_.pop_back();
    undo_.pop_back();
    return true;
}

bool ChainState::operator==(const ChainState& o) const {
    return utxos_ == o.utxos_ && summaries_ == o.summaries_ && undo_ == o.undo_ &&
           cumulative_work_ == o.cumulative_work_;
}

Digest32 ChainState::digest() const {
    Bytes data;
    data.insert(data.end(), tip_hash().bytes.begin(), tip_hash().bytes.end());
    append_u32(data, height());
    Digest32 work = cumulative_work_.to_be_bytes();
    data.insert(data.end(), work.bytes.begin(), work.bytes.end());
    Digest32 utxo = utxos_.digest();
    data.insert(data.end(), utxo.bytes.begin(), utxo.bytes.end());
    return hash256(data);
}

}  // namespace minichain
