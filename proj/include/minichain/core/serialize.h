// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CORE_SERIALIZE_H
#define MINICHAIN_CORE_SERIALIZE_H

#include <stdexcept>

#include "minichain/core/block.h"
#include "minichain/core/transaction.h"

namespace minichain {

/// Canonical layout (all integers little-endian, counts u32, no varints):
///   header = version u32 | prev_hash 32B | tx_commitment 32B | time u64 | bits u32 | nonce u64
///   input  = prev_txid 32B | prev_index u32 | script_len u32 | script
///   output = amount u64 | script_len u32 | script
///   tx     = version u32 | lock_time u64 | n_in u32 | inputs | n_out u32 | outputs
///   block  = header | n_tx u32 | transactions

class DeserializeError : public std::runtime_error {
public:
    enum class Kind { truncated, trailing_bytes, count_overflow };

    DeserializeError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Bounds-checked little-endian cursor over a byte span.
class ByteReader {
public:
    explicit ByteReader(ByteSpan data) : data_(data) {}

    uint8_t read_u8();
    uint16_t read_u16();
    uint32_t read_u32();
    uint64_t read_u64();
    Bytes read_bytes(std::size_t n);
    Digest32 read_digest32();

    /// u32 count where each element needs at least min_element_bytes;
    /// anything that cannot fit the remaining input is a count_overflow.
    uint32_t read_count(std::size_t min_element_bytes);

    std::size_t remaining() const { return data_.size() - pos_; }
    bool done() const { return pos_ == data_.size(); }
    void expect_done() const;

private:
    void need(std::size_t n) const;
    ByteSpan data_;
    std::size_t pos_ = 0;
};

Bytes serialize_header(const BlockHeader& header);
BlockHeader deserialize_header(ByteSpan data);

Bytes serialize_tx(const Transaction& tx);
Transaction deserialize_tx(ByteSpan data);

Bytes serialize_block(const Block& block);
Block deserialize_block(ByteSpan data);

// Non-terminal variants for embedding in larger records.
void write_tx(Bytes& out, const Transaction& tx);
Transaction read_tx(ByteReader& reader);
void write_header(Bytes& out, const BlockHeader& header);
BlockHeader read_header(ByteReader& reader);

}  // namespace minichain

#endif  // MINICHAIN_CORE_SERIALIZE_H
