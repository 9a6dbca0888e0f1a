// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_UTIL_BYTES_H
#define MINICHAIN_UTIL_BYTES_H

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace minichain {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

/// Fixed-width digest value; equality is byte equality.
template <std::size_t N>
struct Digest {
    std::array<uint8_t, N> bytes{};

    static constexpr std::size_t size() { return N; }

    auto operator<=>(const Digest&) const = default;
    bool operator==(const Digest&) const = default;

    bool is_zero() const {
        for (uint8_t b : bytes)
            if (b != 0) return false;
        return true;
    }

    uint8_t* data() { return bytes.data(); }
    const uint8_t* data() const { return bytes.data(); }

    static Digest from_span(ByteSpan s) {
        Digest d;
        std::memcpy(d.bytes.data(), s.data(), N);
        return d;
    }
};

using Digest32 = Digest<32>;
using Digest20 = Digest<20>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(ByteSpan b) {
    return std::string(b.begin(), b.end());
}

std::string hex_encode(ByteSpan data);
std::optional<Bytes> hex_decode(std::string_view hex);

template <std::size_t N>
std::string hex_encode(const Digest<N>& d) {
    return hex_encode(ByteSpan(d.bytes));
}

template <std::size_t N>
std::optional<Digest<N>> digest_from_hex(std::string_view hex) {
    auto raw = hex_decode(hex);
    if (!raw || raw->size() != N) return std::nullopt;
    return Digest<N>::from_span(*raw);
}

// Little-endian integer append/read helpers shared by all canonical encodings.
inline void append_u16(Bytes& out, uint16_t v) {
    out.push_back(uint8_t(v));
    out.push_back(uint8_t(v >> 8));
}
inline void append_u32(Bytes& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(uint8_t(v >> (8 * i)));
}
inline void append_u64(Bytes& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(uint8_t(v >> (8 * i)));
}

inline uint32_t read_u32_le(const uint8_t* p) {
    return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 | uint32_t(p[3]) << 24;
}
inline uint64_t read_u64_le(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

}  // namespace minichain

#endif  // MINICHAIN_UTIL_BYTES_H
