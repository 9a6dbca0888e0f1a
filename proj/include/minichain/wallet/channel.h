// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_WALLET_CHANNEL_H
#define MINICHAIN_WALLET_CHANNEL_H

#include "minichain/wallet/wallet.h"

namespace minichain {

class ChannelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unidirectional micropayment channel: 2-of-2 multisig funding plus a
/// locktimed refund, settled by the newest commitment. The refund is signed
/// by both parties BEFORE the funding transaction may be broadcast; the
/// constructor enforces that ordering.
class Channel {
public:
    enum class State { pending_funding, open, closed, refunded };

    /// Builds the funding tx (capacity to the 2-of-2 P2SH, funded by the
    /// funder wallet) and the both-signed refund (lock_time = refund_time,
    /// full capacity minus fee back to the funder). The payee keypair
    /// stands in for the counterparty co-signing the refund; when
    /// payee_signs_refund is false the open aborts with no funds committed.
    /// Throws ChannelError / WalletError on violations.
    static Channel open(Wallet& funder_wallet, const std::string& funder_label,
                        const KeyPair& payee, const ChainState& state, Amount capacity,
                        Amount fee, uint64_t refund_time, bool payee_signs_refund = true);

    /// The funding transaction to broadcast; only available once the refund
    /// carries both signatures.
    const Transaction& funding_tx() const { return funding_tx_; }
    const Transaction& refund_tx() const { return refund_tx_; }
    const OutPoint& funding_outpoint() const { return funding_outpoint_; }
    const Script& redeem_script() const { return redeem_; }

    void mark_funding_confirmed();

    /// Funder moves `increment` more to the payee: a new commitment spending
    /// the funding output with the updated split, funder-signed. The payee
    /// holds the result. Throws ChannelError on a closed channel, non-positive
    /// increment, or a split exceeding capacity - fee.
    Transaction pay(Amount increment);

    /// Payee countersigns the newest commitment for broadcast (before the
    /// refund time); marks the channel closed.
    Transaction close(const KeyPair& payee);

    /// Funder's exit when the payee vanished: the both-signed refund.
    /// Confirmable only at time >= refund_time and only while no commitment
    /// spent the funding output first.
    Transaction refund() const;

    void mark_refunded() { state_ = State::refunded; }

    /// Round-trips everything except the funder's secret key, which the
    /// caller supplies again at load time.
    Bytes serialize() const;
    static Channel deserialize(ByteSpan data, const KeyPair& funder);

    State state() const { return state_; }
    uint64_t commitment_index() const { return commitment_index_; }
    Amount capacity() const { return capacity_; }
    Amount fee() const { return fee_; }
    Amount payee_amount() const { return payee_amount_; }
    Amount funder_amount() const { return capacity_ - fee_ - payee_amount_; }
    uint64_t refund_time() const { return refund_time_; }

private:
    Channel() = default;

    Transaction build_commitment(Amount payee_amount) const;

    KeyPair funder_;
    PublicKey payee_pub_;
    Script redeem_;
    Transaction funding_tx_;
    OutPoint funding_outpoint_;
    Transaction refund_tx_;
    Transaction latest_commitment_;  // unsigned; funder_sig_ is its funder half
    Signature funder_sig_;
    uint64_t commitment_index_ = 0;
    Amount capacity_ = 0;
    Amount fee_ = 0;
    Amount payee_amount_ = 0;
    uint64_t refund_time_ = 0;
    State state_ = State::pending_funding;
};

}  // namespace minichain

#endif  // MINICHAIN_WALLET_CHANNEL_H
