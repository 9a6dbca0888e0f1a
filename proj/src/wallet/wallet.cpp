// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/wallet/wallet.h"

#include <algorithm>

#include "minichain/crypto/sha256.h"
#include "minichain/script/interpreter.h"

namespace minichain {

const KeyPair& Wallet::create_key(const std::string& label, ByteSpan seed) {
    auto [it, inserted] = keys_.emplace(label, keypair_generate(seed));
    if (inserted) {
        label_order_.push_back(label);
        Digest20 pkh = hash20(ByteSpan(it->second.public_key.bytes));
        pkh_to_label_.emplace(pkh.bytes, label);
    }
    return it->second;
}

const KeyPair* Wallet::key(const std::string& label) const {
    auto it = keys_.find(label);
    return it == keys_.end() ? nullptr : &it->second;
}

Address Wallet::address(const std::string& label) const {
    const KeyPair* kp = key(label);
    if (!kp) throw WalletError(WalletError::Kind::missing_key, "no key labelled " + label);
    return encode_address(kVersionP2PKH, hash20(ByteSpan(kp->public_key.bytes)));
}

void Wallet::watch_address(const Address& addr) {
    watched_.push_back(addr);
}

void Wallet::add_redeem_script(const Script& redeem) {
    redeem_scripts_.emplace(hash20(redeem.bytes), redeem);
}

const Script* Wallet::redeem_script(const Digest20& script_hash) const {
    auto it = redeem_scripts_.find(script_hash);
    return it == redeem_scripts_.end() ? nullptr : &it->second;
}

std::pair<Script, Address> Wallet::create_multisig(unsigned m,
                                                   const std::vector<PublicKey>& pubkeys) {
    Script redeem = make_multisig(m, pubkeys);
    Address addr = p2sh_address(redeem);
    add_redeem_script(redeem);
    return {redeem, addr};
}

// How many of the redeem script's keys this wallet holds, in key order.
static std::vector<const KeyPair*> held_multisig_keys(
    const std::map<std::string, KeyPair>& keys, const Script& redeem) {
    std::vector<const KeyPair*> held;
    // redeem = OP_m (33-byte pushes) OP_n OP_CHECKMULTISIG
    const Bytes& b = redeem.bytes;
    std::size_t pos = 1;
    while (pos + 34 <= b.size() && b[pos] == 33) {
        PublicKey pk;
        std::copy(b.begin() + pos + 1, b.begin() + pos + 34, pk.bytes.begin());
        for (const auto& [label, kp] : keys)
            if (kp.public_key == pk) {
                held.push_back(&kp);
                break;
            }
        pos += 34;
    }
    return held;
}

static unsigned multisig_m(const Script& redeem) {
    if (redeem.bytes.empty()) return 0;
    uint8_t op = redeem.bytes[0];
    if (op == OP_0) return 0;
    if (op >= OP_1 && op <= OP_16) return op - OP_1 + 1;
    return 0;
}

bool Wallet::matches_wallet(const Script& script_pubkey, bool* signable) const {
    auto set_signable = [&](bool v) {
        if (signable) *signable = v;
    };
    if (auto pkh = match_p2pkh(script_pubkey)) {
        if (pkh_to_label_.count(pkh->bytes)) {
            set_signable(true);
            return true;
        }
        for (const auto& w : watched_)
            if (w.version == kVersionP2PKH && w.payload == *pkh) {
                set_signable(false);
                return true;
            }
        return false;
    }
    if (auto pk = match_p2pk(script_pubkey)) {
        Digest20 pkh = hash20(ByteSpan(pk->bytes));
        if (pkh_to_label_.count(pkh.bytes)) {
            set_signable(true);
            return true;
        }
        return false;
    }
    if (auto sh = match_p2sh(script_pubkey)) {
        if (const Script* redeem = redeem_script(*sh)) {
            unsigned m = multisig_m(*redeem);
            set_signable(m > 0 && held_multisig_keys(keys_, *redeem).size() >= m);
            return true;
        }
        for (const auto& w : watched_)
            if (w.version == kVersionP2SH && w.payload == *sh) {
                set_signable(false);
                return true;
            }
        return false;
    }
    return false;
}

std::vector<Wallet::OwnedUtxo> Wallet::owned_utxos(const ChainState& state) const {
    std::vector<OwnedUtxo> owned;
    for (const auto& [op, entry] : state.utxos()) {
        bool signable = false;
        if (matches_wallet(entry.output.script_pubkey, &signable))
            owned.push_back({op, entry, signable});
    }
    return owned;  // UtxoSet iterates sorted by OutPoint
}

Amount Wallet::balance(const ChainState& state) const {
    const uint32_t next_height = state.height() + 1;
    Amount total = 0;
    for (const auto& o : owned_utxos(state)) {
        if (!o.signable) continue;
        if (o.entry.is_coinbase &&
            next_height < o.entry.height + state.params().coinbase_maturity)
            continue;
        total += o.entry.output.amount;
    }
    return total;
}

Transaction Wallet::build_payment(const ChainState& state, const Address& dest, Amount amount,
                                  Amount fee, const std::set<OutPoint>* exclude) const {
    if (amount <= 0) throw WalletError(WalletError::Kind::zero_amount, "amount must be positive");
    if (fee < 0) throw WalletError(WalletError::Kind::zero_amount, "fee must be non-negative");

    Script dest_script;
    if (dest.version == kVersionP2PKH)
        dest_script = make_p2pkh(dest.payload);
    else if (dest.version == kVersionP2SH)
        dest_script = make_p2sh(dest.payload);
    else
        throw WalletError(WalletError::Kind::unknown_address_version,
                          "unknown address version " + std::to_string(dest.version));

    // largest-first selection over spendable outputs
    const uint32_t next_height = state.height() + 1;
    std::vector<OwnedUtxo> candidates;
    for (auto& o : owned_utxos(state)) {
        if (!o.signable) continue;
        if (o.entry.is_coinbase &&
            next_height < o.entry.height + state.params().coinbase_maturity)
            continue;
        if (exclude && exclude->count(o.outpoint)) continue;
        candidates.push_back(std::move(o));
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const OwnedUtxo& a, const OwnedUtxo& b) {
                         if (a.entry.output.amount != b.entry.output.amount)
                             return a.entry.output.amount > b.entry.output.amount;
                         return a.outpoint < b.outpoint;
                     });

    const Amount needed = amount + fee;
    Transaction tx;
    Amount in_sum = 0;
    for (const auto& c : candidates) {
        if (in_sum >= needed) break;
        tx.inputs.push_back(TxInput{c.outpoint, Script{}});
        in_sum += c.entry.output.amount;
    }
    if (in_sum < needed)
        throw WalletError(WalletError::Kind::insufficient_funds,
                          "balance " + format_amount(in_sum) + " below " + format_amount(needed));

    tx.outputs.push_back(TxOutput{amount, dest_script});
    if (in_sum > needed) {
        if (label_order_.empty())
            throw WalletError(WalletError::Kind::missing_key, "no key for change output");
        Digest20 change_pkh =
            hash20(ByteSpan(keys_.at(label_order_.front()).public_key.bytes));
        tx.outputs.push_back(TxOutput{in_sum - needed, make_p2pkh(change_pkh)});
    }
    return tx;
}

Signature sign_input(const KeyPair& key, const Transaction& tx, std::size_t input_index) {
    return sign(key.secret_key, sighash(tx, input_index));
}

Transaction Wallet::sign_all(const ChainState& state, Transaction tx) const {
    for (std::size_t i = 0; i < tx.inputs.size(); ++i) {
        const UtxoEntry* entry = state.utxos().find(tx.inputs[i].prevout);
        if (!entry)
            throw WalletError(WalletError::Kind::missing_key,
                              "input " + std::to_string(i) + ": unknown prevout");
        const Script& lock = entry->output.script_pubkey;

        if (auto pkh = match_p2pkh(lock)) {
            auto it = pkh_to_label_.find(pkh->bytes);
            if (it == pkh_to_label_.end())
                throw WalletError(WalletError::Kind::missing_key,
                                  "input " + std::to_string(i) + ": key not held");
            const KeyPair& kp = keys_.at(it->second);
            Signature sig = sign_input(kp, tx, i);
            Script unlock;
            unlock.push_data(sig.bytes);
            unlock.push_data(ByteSpan(kp.public_key.bytes));
            tx.inputs[i].script_sig = std::move(unlock);
        } else if (auto pk = match_p2pk(lock)) {
            Digest20 pkh = hash20(ByteSpan(pk->bytes));
            auto it = pkh_to_label_.find(pkh.bytes);
            if (it == pkh_to_label_.end())
                throw WalletError(WalletError::Kind::missing_key,
                                  "input " + std::to_string(i) + ": key not held");
            Signature sig = sign_input(keys_.at(it->second), tx, i);
            Script unlock;
            unlock.push_data(sig.bytes);
            tx.inputs[i].script_sig = std::move(unlock);
        } else if (auto sh = match_p2sh(lock)) {
            const Script* redeem = redeem_script(*sh);
            if (!redeem)
                throw WalletError(WalletError::Kind::missing_key,
                                  "input " + std::to_string(i) + ": redeem script unknown");
            unsigned m = multisig_m(*redeem);
            auto held = held_multisig_keys(keys_, *redeem);
            if (m == 0 || held.size() < m)
                throw WalletError(WalletError::Kind::missing_key,
                                  "input " + std::to_string(i) + ": hold " +
                                      std::to_string(held.size()) + " of " + std::to_string(m) +
                                      " required keys");
            Script unlock;
            for (unsigned k = 0; k < m; ++k)
                unlock.push_data(sign_input(*held[k], tx, i).bytes);
            unlock.push_data(redeem->bytes);
            tx.inputs[i].script_sig = std::move(unlock);
        } else {
            throw WalletError(WalletError::Kind::missing_key,
                              "input " + std::to_string(i) + ": unrecognized script");
        }
    }
    return tx;
}

}  // namespace minichain
