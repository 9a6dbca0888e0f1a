// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_UTIL_U256_H
#define MINICHAIN_UTIL_U256_H

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "minichain/util/bytes.h"

namespace minichain {

/// Unsigned 256-bit integer, little-endian limb order. Used for PoW targets
/// and cumulative work; all arithmetic here is exact integer arithmetic.
class U256 {
public:
    U256() = default;
    explicit U256(uint64_t v) { limbs_[0] = v; }

    static U256 zero() { return U256(); }
    static U256 one() { return U256(1); }
    static U256 max_value() {
        U256 r;
        r.limbs_ = {~0ULL, ~0ULL, ~0ULL, ~0ULL};
        return r;
    }

    static U256 from_be_bytes(const Digest32& d);
    Digest32 to_be_bytes() const;

    bool is_zero() const {
        return (limbs_[0] | limbs_[1] | limbs_[2] | limbs_[3]) == 0;
    }

    int compare(const U256& o) const {
        for (int i = 3; i >= 0; --i) {
            if (limbs_[i] < o.limbs_[i]) return -1;
            if (limbs_[i] > o.limbs_[i]) return 1;
        }
        return 0;
    }
    bool operator==(const U256& o) const { return limbs_ == o.limbs_; }
    bool operator<(const U256& o) const { return compare(o) < 0; }
    bool operator<=(const U256& o) const { return compare(o) <= 0; }
    bool operator>(const U256& o) const { return compare(o) > 0; }
    bool operator>=(const U256& o) const { return compare(o) >= 0; }

    U256 operator~() const {
        U256 r = *this;
        for (auto& l : r.limbs_) l = ~l;
        return r;
    }

    U256& operator+=(const U256& o);
    U256& operator-=(const U256& o);  // wraps mod 2^256
    U256 operator+(const U256& o) const { U256 r = *this; r += o; return r; }
    U256 operator-(const U256& o) const { U256 r = *this; r -= o; return r; }

    U256 operator<<(unsigned n) const;
    U256 operator>>(unsigned n) const;

    /// 256x64 -> 256-bit product plus carry-out limb.
    U256 mul_u64(uint64_t m, uint64_t* carry_out = nullptr) const;

    /// Quotient and remainder of this / divisor (divisor != 0).
    U256 div_u64(uint64_t divisor, uint64_t* remainder = nullptr) const;

    /// Full 256/256 division, binary long division. divisor must be nonzero.
    static U256 divide(const U256& dividend, const U256& divisor);

    /// Index of highest set bit plus one; 0 for zero.
    unsigned bit_length() const;

    bool bit(unsigned i) const {
        return (limbs_[i / 64] >> (i % 64)) & 1;
    }

    uint64_t low64() const { return limbs_[0]; }

    /// Lossy conversion for simulator probabilities.
    double to_double() const;

    std::string to_hex() const { return hex_encode(to_be_bytes()); }

    const std::array<uint64_t, 4>& limbs() const { return limbs_; }
    std::array<uint64_t, 4>& limbs() { return limbs_; }

private:
    std::array<uint64_t, 4> limbs_{};
};

}  // namespace minichain

#endif  // MINICHAIN_UTIL_U256_H
