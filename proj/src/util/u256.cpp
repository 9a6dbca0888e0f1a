// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/util/u256.h"

namespace minichain {

U256 U256::from_be_bytes(const Digest32& d) {
    U256 r;
    for (int limb = 0; limb < 4; ++limb) {
        uint64_t v = 0;
        for (int b = 0; b < 8; ++b) v = (v << 8) | d.bytes[(3 - limb) * 8 + b];
        r.limbs_[limb] = v;
    }
    return r;
}

Digest32 U256::to_be_bytes() const {
    Digest32 d;
    for (int limb = 0; limb < 4; ++limb) {
        uint64_t v = limbs_[limb];
        for (int b = 7; b >= 0; --b) {
            d.bytes[(3 - limb) * 8 + b] = uint8_t(v);
            v >>= 8;
        }
    }
    return d;
}

U256& U256::operator+=(const U256& o) {
    unsigned __int128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 s = (unsigned __int128)limbs_[i] + o.limbs_[i] + carry;
        limbs_[i] = uint64_t(s);
        carry = s >> 64;
    }
    return *this;
}

U256& U256::operator-=(const U256& o) {
    unsigned __int128 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 d = (unsigned __int128)limbs_[i] - o.limbs_[i] - borrow;
        limbs_[i] = uint64_t(d);
        borrow = (d >> 64) & 1;
    }
    return *this;
}

U256 U256::operator<<(unsigned n) const {
    U256 r;
    if (n >= 256) return r;
    unsigned limb_shift = n / 64, bit_shift = n % 64;
    for (int i = 3; i >= 0; --i) {
        int src = i - int(limb_shift);
        uint64_t v = 0;
        if (src >= 0) v = limbs_[src] << bit_shift;
        if (bit_shift && src - 1 >= 0) v |= limbs_[src - 1] >> (64 - bit_shift);
        r.limbs_[i] = v;
    }
    return r;
}

U256 U256::operator>>(unsigned n) const {
    U256 r;
    if (n >= 256) return r;
    unsigned limb_shift = n / 64, bit_shift = n % 64;
    for (int i = 0; i < 4; ++i) {
        unsigned src = i + limb_shift;
        uint64_t v = 0;
        if (src < 4) v = limbs_[src] >> bit_shift;
        if (bit_shift && src + 1 < 4) v |= limbs_[src + 1] << (64 - bit_shift);
        r.limbs_[i] = v;
    }
    return r;
}

U256 U256::mul_u64(uint64_t m, uint64_t* carry_out) const {
    U256 r;
    unsigned __int128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 p = (unsigned __int128)limbs_[i] * m + carry;
        r.limbs_[i] = uint64_t(p);
        carry = p >> 64;
    }
    if (carry_out) *carry_out = uint64_t(carry);
    return r;
}

U256 U256::div_u64(uint64_t divisor, uint64_t* remainder) const {
    U256 q;
    unsigned __int128 rem = 0;
    for (int i = 3; i >= 0; --i) {
        unsigned __int128 cur = (rem << 64) | limbs_[i];
        q.limbs_[i] = uint64_t(cur / divisor);
        rem = cur % divisor;
    }
    if (remainder) *remainder = uint64_t(rem);
    return q;
}

U256 U256::divide(const U256& dividend, const U256& divisor) {
    U256 quotient;
    U256 rem;
    unsigned bits = dividend.bit_length();
    for (int i = int(bits) - 1; i >= 0; --i) {
        rem = rem << 1;
        if (dividend.bit(unsigned(i))) rem.limbs_[0] |= 1;
        if (rem >= divisor) {
            rem -= divisor;
            quotient.limbs_[unsigned(i) / 64] |= 1ULL << (unsigned(i) % 64);
        }
    }
    return quotient;
}

unsigned U256::bit_length() const {
    for (int i = 3; i >= 0; --i) {
        if (limbs_[i] != 0)
            return unsigned(i) * 64 + (64 - unsigned(__builtin_clzll(limbs_[i])));
    }
    return 0;
}

double U256::to_double() const {
    double r = 0.0;
    for (int i = 3; i >= 0; --i) r = r * 18446744073709551616.0 + double(limbs_[i]);
    return r;
}

}  // namespace minichain
