// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_WALLET_WALLET_H
#define MINICHAIN_WALLET_WALLET_H

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "minichain/consensus/chainstate.h"
#include "minichain/crypto/base58.h"
#include "minichain/crypto/ecdsa.h"

namespace minichain {

class WalletError : public std::runtime_error {
public:
    enum class Kind { insufficient_funds, zero_amount, unknown_address_version, missing_key };

    WalletError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Keys by label, watched addresses, known redeem scripts, and a UTXO view
/// derived from a ChainState. Single-threaded mutation.
class Wallet {
public:
    struct OwnedUtxo {
        OutPoint outpoint;
        UtxoEntry entry;
        bool signable = false;
    };

    const KeyPair& create_key(const std::string& label, ByteSpan seed);
    const KeyPair* key(const std::string& label) const;
    const std::vector<std::string>& labels() const { return label_order_; }

    /// P2PKH address of a labelled key.
    Address address(const std::string& label) const;

    void watch_address(const Address& addr);

    /// Registers a redeem script so its P2SH outputs become recognizable
    /// (and spendable when enough keys are held).
    void add_redeem_script(const Script& redeem);
    const Script* redeem_script(const Digest20& script_hash) const;

    /// (redeem script, P2SH address) for m-of-n over the given pubkeys;
    /// registers the redeem script with this wallet.
    std::pair<Script, Address> create_multisig(unsigned m, const std::vector<PublicKey>& pubkeys);

    /// Everything in the UTXO set this wallet recognizes as its own;
    /// deterministic order. Matches a whole-chain scan by construction.
    std::vector<OwnedUtxo> owned_utxos(const ChainState& state) const;

    /// Spendable balance: signable outputs, coinbase maturity respected for
    /// the next block height.
    Amount balance(const ChainState& state) const;

    /// Unsigned payment: inputs selected largest-first, dest output per the
    /// address version, change (when positive) back to the wallet's first
    /// key. sum(in) - sum(out) == fee exactly. `exclude` marks outpoints
    /// already committed to pending transactions.
    Transaction build_payment(const ChainState& state, const Address& dest, Amount amount,
                              Amount fee,
                              const std::set<OutPoint>* exclude = nullptr) const;

    /// Fills every input's script_sig so eval accepts. Throws WalletError
    /// (missing_key, with the input index) when it cannot.
    Transaction sign_all(const ChainState& state, Transaction tx) const;

    bool matches_wallet(const Script& script_pubkey, bool* signable = nullptr) const;

private:
    std::map<std::string, KeyPair> keys_;
    std::vector<std::string> label_order_;
    std::map<std::array<uint8_t, 20>, std::string> pkh_to_label_;
    std::vector<Address> watched_;
    std::map<Digest20, Script> redeem_scripts_;
};

/// Raw signature over sighash(tx, input_index); building block for multisig
/// and channel signing flows.
Signature sign_input(const KeyPair& key, const Transaction& tx, std::size_t input_index);

}  // namespace minichain

#endif  // MINICHAIN_WALLET_WALLET_H
