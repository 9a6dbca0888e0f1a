// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/core/serialize.h"

namespace minichain {

void ByteReader::need(std::size_t n) const {
    if (remaining() < n)
        throw DeserializeError(DeserializeError::Kind::truncated,
                               "input truncated: need " + std::to_string(n) + " bytes, have " +
                                   std::to_string(remaining()));
}

uint8_t ByteReader::read_u8() {
    need(1);
    return data_[pos_++];
}

uint16_t ByteReader::read_u16() {
    need(2);
    uint16_t v = uint16_t(data_[pos_]) | uint16_t(data_[pos_ + 1]) << 8;
    pos_ += 2;
    return v;
}

uint32_t ByteReader::read_u32() {
    need(4);
    uint32_t v = read_u32_le(data_.data() + pos_);
    pos_ += 4;
    return v;
}

uint64_t ByteReader::read_u64() {
    need(8);
    uint64_t v = read_u64_le(data_.data() + pos_);
    pos_ += 8;
    return v;
}

Bytes ByteReader::read_bytes(std::size_t n) {
    need(n);
    Bytes out(data_.begin() + pos_, data_.begin() + pos_ + n);
    pos_ += n;
    return out;
}

Digest32 ByteReader::read_digest32() {
    need(32);
    Digest32 d = Digest32::from_span(data_.subspan(pos_, 32));
    pos_ += 32;
    return d;
}

uint32_t ByteReader::read_count(std::size_t min_element_bytes) {
    uint32_t count = read_u32();
    if (min_element_bytes != 0 && uint64_t(count) * min_element_bytes > remaining())
        throw DeserializeError(DeserializeError::Kind::count_overflow,
                               "count " + std::to_string(count) + " overflows remaining input");
    return count;
}

void ByteReader::expect_done() const {
    if (!done())
        throw DeserializeError(DeserializeError::Kind::trailing_bytes,
                               std::to_string(remaining()) + " trailing bytes after value");
}

void write_header(Bytes& out, const BlockHeader& header) {
    append_u32(out, header.version);
    out.insert(out.end(), header.prev_hash.bytes.begin(), header.prev_hash.bytes.end());
    out.insert(out.end(), header.tx_commitment.bytes.begin(), header.tx_commitment.bytes.end());
    append_u64(out, header.time);
    append_u32(out, header.bits);
    append_u64(out, header.nonce);
}

Bytes serialize_header(const BlockHeader& header) {
    Bytes out;
    out.reserve(88);
    write_header(out, header);
    return out;
}

BlockHeader read_header(ByteReader& reader) {
    BlockHeader h;
    h.version = reader.read_u32();
    h.prev_hash = reader.read_digest32();
    h.tx_commitment = reader.read_digest32();
    h.time = reader.read_u64();
    h.bits = reader.read_u32();
    h.nonce = reader.read_u64();
    return h;
}

BlockHeader deserialize_header(ByteSpan data) {
    ByteReader reader(data);
    BlockHeader h = read_header(reader);
    reader.expect_done();
    return h;
}

static void write_script(Bytes& out, const Script& script) {
    append_u32(out, uint32_t(script.bytes.size()));
    out.insert(out.end(), script.bytes.begin(), script.bytes.end());
}

static Script read_script(ByteReader& reader) {
    // a byte-length that outruns the input is a truncation, not a bad count
    uint32_t len = reader.read_u32();
    return Script{reader.read_bytes(len)};
}

void write_tx(Bytes& out, const Transaction& tx) {
    append_u32(out, tx.version);
    append_u64(out, tx.lock_time);
    append_u32(out, uint32_t(tx.inputs.size()));
    for (const auto& in : tx.inputs) {
        out.insert(out.end(), in.prevout.txid.bytes.begin(), in.prevout.txid.bytes.end());
        append_u32(out, in.prevout.index);
        write_script(out, in.script_sig);
    }
    append_u32(out, uint32_t(tx.outputs.size()));
    for (const auto& o : tx.outputs) {
        append_u64(out, uint64_t(o.amount));
        write_script(out, o.script_pubkey);
    }
}

Bytes serialize_tx(const Transaction& tx) {
    Bytes out;
    write_tx(out, tx);
    return out;
}

Transaction read_tx(ByteReader& reader) {
    Transaction tx;
    tx.version = reader.read_u32();
    tx.lock_time = reader.read_u64();
    uint32_t n_in = reader.read_count(40);  // txid + index + script_len
    tx.inputs.reserve(n_in);
    for (uint32_t i = 0; i < n_in; ++i) {
        TxInput in;
        in.prevout.txid = reader.read_digest32();
        in.prevout.index = reader.read_u32();
        in.script_sig = read_script(reader);
        tx.inputs.push_back(std::move(in));
    }
    uint32_t n_out = reader.read_count(12);  // amount + script_len
    tx.outputs.reserve(n_out);
    for (uint32_t i = 0; i < n_out; ++i) {
        TxOutput o;
        o.amount = Amount(reader.read_u64());
        o.script_pubkey = read_script(reader);
        tx.outputs.push_back(std::move(o));
    }
    return tx;
}

Transaction deserialize_tx(ByteSpan data) {
    ByteReader reader(data);
    Transaction tx = read_tx(reader);
    reader.expect_done();
    return tx;
}

Bytes serialize_block(const Block& block) {
    Bytes out;
    write_header(out, block.header);
    append_u32(out, uint32_t(block.transactions.size()));
    for (const auto& tx : block.transactions) write_tx(out, tx);
    return out;
}

Block deserialize_block(ByteSpan data) {
    ByteReader reader(data);
    Block block;
    block.header = read_header(reader);
    uint32_t n_tx = reader.read_count(24);  // minimal tx size
    block.transactions.reserve(n_tx);
    for (uint32_t i = 0; i < n_tx; ++i) block.transactions.push_back(read_tx(reader));
    reader.expect_done();
    return block;
}

}  // namespace minichain
