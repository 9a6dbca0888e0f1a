// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// Self-contained secp256k1 ECDSA. Field elements and scalars are 4x64-bit
// little-endian limbs kept fully reduced; points use Jacobian coordinates.
// Not constant-time: this signs simulator transactions, not real money.

#include <cstring>
#include <stdexcept>

#include "minichain/crypto/ecdsa.h"
#include "minichain/crypto/hmac_sha256.h"
#include "minichain/crypto/sha256.h"

namespace minichain {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

struct Limbs4 {
    u64 l[4] = {0, 0, 0, 0};

    bool operator==(const Limbs4& o) const {
        return l[0] == o.l[0] && l[1] == o.l[1] && l[2] == o.l[2] && l[3] == o.l[3];
    }
    bool is_zero() const { return (l[0] | l[1] | l[2] | l[3]) == 0; }
};

// Field prime p = 2^256 - 2^32 - 977 and scalar order n.
const Limbs4 P = {{0xFFFFFFFEFFFFFC2FULL, 0xFFFFFFFFFFFFFFFFULL,
                   0xFFFFFFFFFFFFFFFFULL, 0xFFFFFFFFFFFFFFFFULL}};
const Limbs4 N = {{0xBFD25E8CD0364141ULL, 0xBAAEDCE6AF48A03BULL,
                   0xFFFFFFFFFFFFFFFEULL, 0xFFFFFFFFFFFFFFFFULL}};
// 2^256 - n, the scalar reduction constant.
const u64 N_C[3] = {0x402DA1732FC9BEBFULL, 0x4551231950B75FC4ULL, 1};
// 2^256 - p = 2^32 + 977.
const u64 P_C = 0x1000003D1ULL;

int cmp(const Limbs4& a, const Limbs4& b) {
    for (int i = 3; i >= 0; --i) {
        if (a.l[i] < b.l[i]) return -1;
        if (a.l[i] > b.l[i]) return 1;
    }
    return 0;
}

// a -= b, assuming a >= b.
void sub_in_place(Limbs4& a, const Limbs4& b) {
    u128 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        u128 d = (u128)a.l[i] - b.l[i] - borrow;
        a.l[i] = (u64)d;
        borrow = (d >> 64) & 1;
    }
}

// returns carry
u64 add_in_place(Limbs4& a, const Limbs4& b) {
    u128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 s = (u128)a.l[i] + b.l[i] + carry;
        a.l[i] = (u64)s;
        carry = s >> 64;
    }
    return (u64)carry;
}

void mul_4x4(const u64 a[4], const u64 b[4], u64 out[8]) {
    std::memset(out, 0, 8 * sizeof(u64));
    for (int i = 0; i < 4; ++i) {
        u128 carry = 0;
        for (int j = 0; j < 4; ++j) {
            u128 cur = (u128)a[i] * b[j] + out[i + j] + carry;
            out[i + j] = (u64)cur;
            carry = cur >> 64;
        }
        out[i + 4] = (u64)carry;
    }
}

Limbs4 from_be(const uint8_t* bytes32) {
    Limbs4 r;
    for (int i = 0; i < 4; ++i) {
        u64 v = 0;
        for (int b = 0; b < 8; ++b) v = (v << 8) | bytes32[(3 - i) * 8 + b];
        r.l[i] = v;
    }
    return r;
}

void to_be(const Limbs4& a, uint8_t* bytes32) {
    for (int i = 0; i < 4; ++i) {
        u64 v = a.l[i];
        for (int b = 7; b >= 0; --b) {
            bytes32[(3 - i) * 8 + b] = (uint8_t)v;
            v >>= 8;
        }
    }
}

// ---- field arithmetic mod p ----

using Fe = Limbs4;

void fe_normalize(Fe& a, u64 carry) {
    // carry * 2^256 == carry * P_C (mod p)
    while (carry) {
        u128 c = (u128)carry * P_C;
        u64 add[4] = {(u64)c, (u64)(c >> 64), 0, 0};
        Limbs4 t = {{add[0], add[1], add[2], add[3]}};
        carry = add_in_place(a, t);
    }
    if (cmp(a, P) >= 0) sub_in_place(a, P);
}

Fe fe_add(const Fe& a, const Fe& b) {
    Fe r = a;
    u64 carry = add_in_place(r, b);
    fe_normalize(r, carry);
    return r;
}

Fe fe_sub(const Fe& a, const Fe& b) {
    Fe pm = P;
    sub_in_place(pm, b);  // p - b
    return fe_add(a, pm);
}

Fe fe_reduce_wide(const u64 w[8]) {
    // two folds of high limbs times P_C, then a final conditional subtract
    u64 t[5];
    u128 c = 0;
    for (int i = 0; i < 4; ++i) {
        u128 cur = (u128)w[4 + i] * P_C + w[i] + c;
        t[i] = (u64)cur;
        c = cur >> 64;
    }
    t[4] = (u64)c;

    Fe r;
    c = (u128)t[4] * P_C + t[0];
    r.l[0] = (u64)c;
    c >>= 64;
    for (int i = 1; i < 4; ++i) {
        c += t[i];
        r.l[i] = (u64)c;
        c >>= 64;
    }
    fe_normalize(r, (u64)c);
    return r;
}

Fe fe_mul(const Fe& a, const Fe& b) {
    u64 w[8];
    mul_4x4(a.l, b.l, w);
    return fe_reduce_wide(w);
}

Fe fe_sqr(const Fe& a) { return fe_mul(a, a); }

Fe fe_mul_small(const Fe& a, u64 m) {
    u64 w[8] = {0};
    u128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 cur = (u128)a.l[i] * m + carry;
        w[i] = (u64)cur;
        carry = cur >> 64;
    }
    w[4] = (u64)carry;
    return fe_reduce_wide(w);
}

Fe fe_neg(const Fe& a) {
    if (a.is_zero()) return a;
    Fe r = P;
    sub_in_place(r, a);
    return r;
}

// a^e mod p, square-and-multiply MSB first.
Fe fe_pow(const Fe& a, const Limbs4& e) {
    Fe result;
    result.l[0] = 1;
    bool started = false;
    for (int bit = 255; bit >= 0; --bit) {
        if (started) result = fe_sqr(result);
        if ((e.l[bit / 64] >> (bit % 64)) & 1) {
            if (started)
                result = fe_mul(result, a);
            else {
                result = a;
                started = true;
            }
        }
    }
    return result;
}

Fe fe_inv(const Fe& a) {
    Limbs4 e = P;
    e.l[0] -= 2;
    return fe_pow(a, e);
}

// sqrt via a^((p+1)/4); caller must check the result squares back.
Fe fe_sqrt(const Fe& a) {
    Limbs4 e = P;
    u64 carry = 1;  // (p+1)
    for (int i = 0; i < 4 && carry; ++i) {
        u128 s = (u128)e.l[i] + carry;
        e.l[i] = (u64)s;
        carry = (u64)(s >> 64);
    }
    // shift right by 2
    for (int i = 0; i < 4; ++i) {
        e.l[i] >>= 2;
        if (i < 3) e.l[i] |= e.l[i + 1] << 62;
    }
    return fe_pow(a, e);
}

// ---- scalar arithmetic mod n ----

using Scalar = Limbs4;

void scalar_reduce_wide(u64 w[8], Scalar& out) {
    // fold high*(2^256 - n) until the high half clears
    while (w[4] | w[5] | w[6] | w[7]) {
        u64 hi[4] = {w[4], w[5], w[6], w[7]};
        u64 lo[4] = {w[0], w[1], w[2], w[3]};
        std::memset(w, 0, 8 * sizeof(u64));
        for (int i = 0; i < 4; ++i) {
            u128 carry = 0;
            for (int j = 0; j < 3; ++j) {
                u128 cur = (u128)hi[i] * N_C[j] + w[i + j] + carry;
                w[i + j] = (u64)cur;
                carry = cur >> 64;
            }
            u128 cur = (u128)w[i + 3] + carry;
            w[i + 3] = (u64)cur;
            carry = cur >> 64;
            for (int k = i + 4; carry && k < 8; ++k) {
                cur = (u128)w[k] + carry;
                w[k] = (u64)cur;
                carry = cur >> 64;
            }
        }
        u128 carry = 0;
        for (int i = 0; i < 4; ++i) {
            u128 cur = (u128)w[i] + lo[i] + carry;
            w[i] = (u64)cur;
            carry = cur >> 64;
        }
        for (int k = 4; carry && k < 8; ++k) {
            u128 cur = (u128)w[k] + carry;
            w[k] = (u64)cur;
            carry = cur >> 64;
        }
    }
    out = {{w[0], w[1], w[2], w[3]}};
    while (cmp(out, N) >= 0) sub_in_place(out, N);
}

Scalar scalar_mul(const Scalar& a, const Scalar& b) {
    u64 w[8];
    mul_4x4(a.l, b.l, w);
    Scalar r;
    scalar_reduce_wide(w, r);
    return r;
}

Scalar scalar_add(const Scalar& a, const Scalar& b) {
    u64 w[8] = {0};
    Limbs4 t = a;
    w[4] = add_in_place(t, b);
    std::memcpy(w, t.l, 4 * sizeof(u64));
    Scalar r;
    scalar_reduce_wide(w, r);
    return r;
}

Scalar scalar_from_be(const uint8_t* bytes32) {
    Scalar s = from_be(bytes32);
    while (cmp(s, N) >= 0) sub_in_place(s, N);
    return s;
}

Scalar scalar_inv(const Scalar& a) {
    Limbs4 e = N;
    e.l[0] -= 2;
    Scalar result;
    result.l[0] = 1;
    bool started = false;
    for (int bit = 255; bit >= 0; --bit) {
        if (started) result = scalar_mul(result, result);
        if ((e.l[bit / 64] >> (bit % 64)) & 1) {
            if (started)
                result = scalar_mul(result, a);
            else {
                result = a;
                started = true;
            }
        }
    }
    return result;
}

bool scalar_valid_nonzero(const Scalar& s) {
    return !s.is_zero() && cmp(s, N) < 0;
}

// ---- point arithmetic, Jacobian coordinates ----

struct Point {
    Fe x, y, z;  // z == 0 means infinity
    bool is_infinity() const { return z.is_zero(); }
};

const Point G = [] {
    Point g;
    const uint8_t gx[32] = {0x79, 0xBE, 0x66, 0x7E, 0xF9, 0xDC, 0xBB, 0xAC,
                            0x55, 0xA0, 0x62, 0x95, 0xCE, 0x87, 0x0B, 0x07,
                            0x02, 0x9B, 0xFC, 0xDB, 0x2D, 0xCE, 0x28, 0xD9,
                            0x59, 0xF2, 0x81, 0x5B, 0x16, 0xF8, 0x17, 0x98};
    const uint8_t gy[32] = {0x48, 0x3A, 0xDA, 0x77, 0x26, 0xA3, 0xC4, 0x65,
                            0x5D, 0xA4, 0xFB, 0xFC, 0x0E, 0x11, 0x08, 0xA8,
                            0xFD, 0x17, 0xB4, 0x48, 0xA6, 0x85, 0x54, 0x19,
                            0x9C, 0x47, 0xD0, 0x8F, 0xFB, 0x10, 0xD4, 0xB8};
    g.x = from_be(gx);
    g.y = from_be(gy);
    g.z.l[0] = 1;
    return g;
}();

Point point_infinity() { return Point{}; }

Point point_double(const Point& p) {
    if (p.is_infinity() || p.y.is_zero()) return point_infinity();
    Fe a = fe_sqr(p.x);
    Fe b = fe_sqr(p.y);
    Fe c = fe_sqr(b);
    Fe xb = fe_add(p.x, b);
    Fe d = fe_mul_small(fe_sub(fe_sub(fe_sqr(xb), a), c), 2);
    Fe e = fe_mul_small(a, 3);
    Fe f = fe_sqr(e);
    Point r;
    r.x = fe_sub(f, fe_mul_small(d, 2));
    r.y = fe_sub(fe_mul(e, fe_sub(d, r.x)), fe_mul_small(c, 8));
    r.z = fe_mul_small(fe_mul(p.y, p.z), 2);
    return r;
}

Point point_add(const Point& p, const Point& q) {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    Fe z1z1 = fe_sqr(p.z);
    Fe z2z2 = fe_sqr(q.z);
    Fe u1 = fe_mul(p.x, z2z2);
    Fe u2 = fe_mul(q.x, z1z1);
    Fe s1 = fe_mul(p.y, fe_mul(q.z, z2z2));
    Fe s2 = fe_mul(q.y, fe_mul(p.z, z1z1));
    if (u1 == u2) {
        if (!(s1 == s2)) return point_infinity();
        return point_double(p);
    }
    Fe h = fe_sub(u2, u1);
    Fe rr = fe_sub(s2, s1);
    Fe h2 = fe_sqr(h);
    Fe h3 = fe_mul(h, h2);
    Fe u1h2 = fe_mul(u1, h2);
    Point r;
    r.x = fe_sub(fe_sub(fe_sqr(rr), h3), fe_mul_small(u1h2, 2));
    r.y = fe_sub(fe_mul(rr, fe_sub(u1h2, r.x)), fe_mul(s1, h3));
    r.z = fe_mul(fe_mul(p.z, q.z), h);
    return r;
}

Point point_mul(const Point& base, const Scalar& k) {
    Point r = point_infinity();
    for (int bit = 255; bit >= 0; --bit) {
        r = point_double(r);
        if ((k.l[bit / 64] >> (bit % 64)) & 1) r = point_add(r, base);
    }
    return r;
}

// affine x and y; point must not be infinity
void point_affine(const Point& p, Fe& x_out, Fe& y_out) {
    Fe zi = fe_inv(p.z);
    Fe zi2 = fe_sqr(zi);
    x_out = fe_mul(p.x, zi2);
    y_out = fe_mul(p.y, fe_mul(zi, zi2));
}

PublicKey compress(const Fe& x, const Fe& y) {
    PublicKey pk;
    pk.bytes[0] = (y.l[0] & 1) ? 0x03 : 0x02;
    to_be(x, pk.bytes.data() + 1);
    return pk;
}

// y^2 = x^3 + 7
Fe curve_rhs(const Fe& x) {
    Fe seven;
    seven.l[0] = 7;
    return fe_add(fe_mul(fe_sqr(x), x), seven);
}

bool decompress(const PublicKey& pk, Point& out) {
    if (pk.bytes[0] != 0x02 && pk.bytes[0] != 0x03) return false;
    Fe x = from_be(pk.bytes.data() + 1);
    if (cmp(x, P) >= 0) return false;
    Fe rhs = curve_rhs(x);
    Fe y = fe_sqrt(rhs);
    if (!(fe_sqr(y) == rhs)) return false;
    bool want_odd = pk.bytes[0] == 0x03;
    if (bool(y.l[0] & 1) != want_odd) y = fe_neg(y);
    out.x = x;
    out.y = y;
    out.z = Limbs4{};
    out.z.l[0] = 1;
    return true;
}

Scalar secret_to_scalar(const SecretKey& sk) {
    return from_be(sk.bytes.data());
}

}  // namespace

PublicKey derive_public_key(const SecretKey& secret_key) {
    Scalar d = secret_to_scalar(secret_key);
    if (!scalar_valid_nonzero(d)) throw std::invalid_argument("invalid secret key");
    Point p = point_mul(G, d);
    Fe x, y;
    point_affine(p, x, y);
    return compress(x, y);
}

KeyPair keypair_generate(ByteSpan seed) {
    if (seed.empty()) throw std::invalid_argument("keypair seed must be non-empty");
    KeyPair kp;
    for (uint32_t counter = 0;; ++counter) {
        Bytes material(seed.begin(), seed.end());
        append_u32(material, counter);
        Digest32 h = hash256(material);
        Scalar d = from_be(h.bytes.data());
        if (scalar_valid_nonzero(d)) {
            kp.secret_key.bytes = h.bytes;
            break;
        }
    }
    kp.public_key = derive_public_key(kp.secret_key);
    return kp;
}

bool public_key_valid(const PublicKey& public_key) {
    Point p;
    return decompress(public_key, p);
}

Signature sign(const SecretKey& secret_key, const Digest32& digest) {
    Scalar d = secret_to_scalar(secret_key);
    if (!scalar_valid_nonzero(d)) throw std::invalid_argument("invalid secret key");
    Scalar e = scalar_from_be(digest.bytes.data());

    for (uint32_t counter = 0;; ++counter) {
        // Deterministic nonce: HMAC keyed by the secret over digest||counter.
        Bytes msg(digest.bytes.begin(), digest.bytes.end());
        append_u32(msg, counter);
        Digest32 kh = hmac_sha256(ByteSpan(secret_key.bytes), msg);
        Scalar k = from_be(kh.bytes.data());
        if (!scalar_valid_nonzero(k)) continue;

        Point rp = point_mul(G, k);
        Fe rx, ry;
        point_affine(rp, rx, ry);
        uint8_t rx_be[32];
        to_be(rx, rx_be);
        Scalar r = scalar_from_be(rx_be);
        if (r.is_zero()) continue;

        Scalar s = scalar_mul(scalar_inv(k), scalar_add(e, scalar_mul(r, d)));
        if (s.is_zero()) continue;

        // low-s form for a canonical encoding
        Limbs4 half_n = N;
        for (int i = 0; i < 4; ++i) {
            half_n.l[i] >>= 1;
            if (i < 3) half_n.l[i] |= half_n.l[i + 1] << 63;
        }
        if (cmp(s, half_n) > 0) {
            Limbs4 ns = N;
            sub_in_place(ns, s);
            s = ns;
        }

        Signature sig;
        sig.bytes.resize(64);
        to_be(r, sig.bytes.data());
        to_be(s, sig.bytes.data() + 32);
        return sig;
    }
}

bool verify(const PublicKey& public_key, const Digest32& digest, const Signature& sig) {
    if (sig.bytes.size() != 64) return false;
    Scalar r = from_be(sig.bytes.data());
    Scalar s = from_be(sig.bytes.data() + 32);
    if (!scalar_valid_nonzero(r) || !scalar_valid_nonzero(s)) return false;

    Point q;
    if (!decompress(public_key, q)) return false;

    Scalar e = scalar_from_be(digest.bytes.data());
    Scalar w = scalar_inv(s);
    Scalar u1 = scalar_mul(e, w);
    Scalar u2 = scalar_mul(r, w);

    Point p = point_add(point_mul(G, u1), point_mul(q, u2));
    if (p.is_infinity()) return false;

    Fe x, y;
    point_affine(p, x, y);
    uint8_t x_be[32];
    to_be(x, x_be);
    Scalar v = scalar_from_be(x_be);
    return v == r;
}

}  // namespace minichain
