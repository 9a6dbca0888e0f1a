// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/wallet/channel.h"

#include "minichain/core/serialize.h"
#include "minichain/crypto/sha256.h"

namespace minichain {

Channel Channel::open(Wallet& funder_wallet, const std::string& funder_label,
                      const KeyPair& payee, const ChainState& state, Amount capacity,
                      Amount fee, uint64_t refund_time, bool payee_signs_refund) {
    const KeyPair* funder = funder_wallet.key(funder_label);
    if (!funder) throw ChannelError("funder key not found: " + funder_label);
    if (capacity <= fee) throw ChannelError("capacity must exceed the channel fee");
    if (refund_time <= state.tip_time())
        throw ChannelError("refund time must be strictly in the future");

    Channel ch;
    ch.funder_ = *funder;
    ch.payee_pub_ = payee.public_key;
    ch.capacity_ = capacity;
    ch.fee_ = fee;
    ch.refund_time_ = refund_time;
    ch.redeem_ = make_multisig(2, {funder->public_key, payee.public_key});
    funder_wallet.add_redeem_script(ch.redeem_);

    Address funding_addr = p2sh_address(ch.redeem_);
    Transaction funding =
        funder_wallet.build_payment(state, funding_addr, capacity, fee);
    funding = funder_wallet.sign_all(state, funding);
    ch.funding_tx_ = std::move(funding);
    ch.funding_outpoint_ = OutPoint{txid(ch.funding_tx_), 0};

    // Refund first, funding broadcast second: without a both-signed refund
    // the funder would be hostage to the payee.
    Transaction refund;
    refund.lock_time = refund_time;
    refund.inputs.push_back(TxInput{ch.funding_outpoint_, Script{}});
    refund.outputs.push_back(TxOutput{
        capacity - fee, make_p2pkh(hash20(ByteSpan(funder->public_key.bytes)))});

    if (!payee_signs_refund)
        throw ChannelError("payee refused to sign the refund; channel aborted unfunded");

    Signature funder_sig = sign_input(*funder, refund, 0);
    Signature payee_sig = sign_input(payee, refund, 0);
    Script unlock;
    unlock.push_data(funder_sig.bytes);
    unlock.push_data(payee_sig.bytes);
    unlock.push_data(ch.redeem_.bytes);
    refund.inputs[0].script_sig = std::move(unlock);
    ch.refund_tx_ = std::move(refund);

    ch.state_ = State::pending_funding;
    return ch;
}

void Channel::mark_funding_confirmed() {
    if (state_ == State::pending_funding) state_ = State::open;
}

Transaction Channel::build_commitment(Amount payee_amount) const {
    Transaction tx;
    tx.inputs.push_back(TxInput{funding_outpoint_, Script{}});
    Amount funder_amount = capacity_ - fee_ - payee_amount;
    if (funder_amount > 0)
        tx.outputs.push_back(TxOutput{
            funder_amount, make_p2pkh(hash20(ByteSpan(funder_.public_key.bytes)))});
    tx.outputs.push_back(
        TxOutput{payee_amount, make_p2pkh(hash20(ByteSpan(payee_pub_.bytes)))});
    return tx;
}

Transaction Channel::pay(Amount increment) {
    if (state_ != State::open) throw ChannelError("channel is not open");
    if (increment <= 0) throw ChannelError("payment increment must be positive");
    if (payee_amount_ + increment > capacity_ - fee_)
        throw ChannelError("increment would exceed channel capacity");

    payee_amount_ += increment;
    ++commitment_index_;
    latest_commitment_ = build_commitment(payee_amount_);
    funder_sig_ = sign_input(funder_, latest_commitment_, 0);
    return latest_commitment_;
}

Transaction Channel::close(const KeyPair& payee) {
    if (state_ != State::open) throw ChannelError("channel is not open");
    if (commitment_index_ == 0) throw ChannelError("no commitment to settle");

    Signature payee_sig = sign_input(payee, latest_commitment_, 0);
    Transaction settled = latest_commitment_;
    Script unlock;
    unlock.push_data(funder_sig_.bytes);
    unlock.push_data(payee_sig.bytes);
    unlock.push_data(redeem_.bytes);
    settled.inputs[0].script_sig = std::move(unlock);
    state_ = State::closed;
    return settled;
}

Transaction Channel::refund() const {
    return refund_tx_;
}

Bytes Channel::serialize() const {
    Bytes out;
    out.push_back(1);  // format version
    out.push_back(uint8_t(state_));
    append_u64(out, uint64_t(capacity_));
    append_u64(out, uint64_t(fee_));
    append_u64(out, refund_time_);
    append_u64(out, uint64_t(payee_amount_));
    append_u64(out, commitment_index_);
    out.insert(out.end(), payee_pub_.bytes.begin(), payee_pub_.bytes.end());
    write_tx(out, funding_tx_);
    write_tx(out, refund_tx_);
    write_tx(out, latest_commitment_);
    append_u32(out, uint32_t(funder_sig_.bytes.size()));
    out.insert(out.end(), funder_sig_.bytes.begin(), funder_sig_.bytes.end());
    return out;
}

Channel Channel::deserialize(ByteSpan data, const KeyPair& funder) {
    ByteReader reader(data);
    if (reader.read_u8() != 1) throw ChannelError("unsupported channel format");
    Channel ch;
    ch.funder_ = funder;
    ch.state_ = State(reader.read_u8());
    ch.capacity_ = Amount(reader.read_u64());
    ch.fee_ = Amount(reader.read_u64());
    ch.refund_time_ = reader.read_u64();
    ch.payee_amount_ = Amount(reader.read_u64());
    ch.commitment_index_ = reader.read_u64();
    Bytes pub = reader.read_bytes(33);
    std::copy(pub.begin(), pub.end(), ch.payee_pub_.bytes.begin());
    ch.funding_tx_ = read_tx(reader);
    ch.refund_tx_ = read_tx(reader);
    ch.latest_commitment_ = read_tx(reader);
    uint32_t sig_len = reader.read_count(1);
    ch.funder_sig_.bytes = reader.read_bytes(sig_len);
    reader.expect_done();
    ch.redeem_ = make_multisig(2, {funder.public_key, ch.payee_pub_});
    ch.funding_outpoint_ = OutPoint{txid(ch.funding_tx_), 0};
    return ch;
}

}  // namespace minichain
