// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// AVX2 8-way double-SHA256 over header nonce ranges. One u32 word per lane;
// lane j hashes nonce_base + j. Must produce byte-identical output to the
// scalar kernel in pow_hasher.cpp — the unit tests enforce that.

#include "minichain/crypto/pow_hasher.h"

#ifdef MINICHAIN_WITH_AVX2

#include <immintrin.h>

#include <cstring>

#include "minichain/crypto/sha256.h"

namespace minichain {
namespace pow_avx2 {

namespace {

const uint32_t K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

using v8 = __m256i;

inline v8 bcast(uint32_t x) { return _mm256_set1_epi32(int(x)); }
inline v8 add(v8 a, v8 b) { return _mm256_add_epi32(a, b); }
inline v8 vxor(v8 a, v8 b) { return _mm256_xor_si256(a, b); }
inline v8 vand(v8 a, v8 b) { return _mm256_and_si256(a, b); }
inline v8 vor(v8 a, v8 b) { return _mm256_or_si256(a, b); }

template <int N>
inline v8 rotr(v8 x) {
    return vor(_mm256_srli_epi32(x, N), _mm256_slli_epi32(x, 32 - N));
}
template <int N>
inline v8 shr(v8 x) {
    return _mm256_srli_epi32(x, N);
}

inline v8 ch(v8 e, v8 f, v8 g) { return vxor(g, vand(e, vxor(f, g))); }
inline v8 maj(v8 a, v8 b, v8 c) { return vor(vand(a, b), vand(c, vor(a, b))); }
inline v8 big_sigma0(v8 x) { return vxor(vxor(rotr<2>(x), rotr<13>(x)), rotr<22>(x)); }
inline v8 big_sigma1(v8 x) { return vxor(vxor(rotr<6>(x), rotr<11>(x)), rotr<25>(x)); }
inline v8 small_sigma0(v8 x) { return vxor(vxor(rotr<7>(x), rotr<18>(x)), shr<3>(x)); }
inline v8 small_sigma1(v8 x) { return vxor(vxor(rotr<17>(x), rotr<19>(x)), shr<10>(x)); }

// 64 rounds over a 16-word ring buffer; state updated in place.
void transform8(v8 state[8], v8 w[16]) {
    v8 a = state[0], b = state[1], c = state[2], d = state[3];
    v8 e = state[4], f = state[5], g = state[6], h = state[7];

    for (int r = 0; r < 64; ++r) {
        v8 wr;
        if (r < 16) {
            wr = w[r];
        } else {
            wr = add(add(w[r % 16], small_sigma0(w[(r - 15) % 16])),
                     add(w[(r - 7) % 16], small_sigma1(w[(r - 2) % 16])));
            w[r % 16] = wr;
        }
        v8 t1 = add(add(h, big_sigma1(e)), add(ch(e, f, g), add(bcast(K[r]), wr)));
        v8 t2 = add(big_sigma0(a), maj(a, b, c));
        h = g;
        g = f;
        f = e;
        e = add(d, t1);
        d = c;
        c = b;
        b = a;
        a = add(t1, t2);
    }

    state[0] = add(state[0], a);
    state[1] = add(state[1], b);
    state[2] = add(state[2], c);
    state[3] = add(state[3], d);
    state[4] = add(state[4], e);
    state[5] = add(state[5], f);
    state[6] = add(state[6], g);
    state[7] = add(state[7], h);
}

inline uint32_t read_be32(const uint8_t* p) {
    return uint32_t(p[0]) << 24 | uint32_t(p[1]) << 16 | uint32_t(p[2]) << 8 | uint32_t(p[3]);
}

inline uint32_t bswap32(uint32_t v) { return __builtin_bswap32(v); }

// Hashes lanes nonce_base .. nonce_base+7 into out (8 x 32 bytes).
void hash_batch8(const uint32_t midstate[8], const uint8_t tail_fixed[64],
                 uint64_t nonce_base, uint8_t* out) {
    v8 w[16];
    // Tail block words; words 4 and 5 carry the little-endian nonce.
    for (int i = 0; i < 16; ++i) w[i] = bcast(read_be32(tail_fixed + 4 * i));
    {
        alignas(32) int lo[8], hi[8];
        for (int j = 0; j < 8; ++j) {
            uint64_t n = nonce_base + uint64_t(j);
            lo[j] = int(bswap32(uint32_t(n)));
            hi[j] = int(bswap32(uint32_t(n >> 32)));
        }
        w[4] = _mm256_load_si256(reinterpret_cast<const v8*>(lo));
        w[5] = _mm256_load_si256(reinterpret_cast<const v8*>(hi));
    }

    v8 state[8];
    for (int i = 0; i < 8; ++i) state[i] = bcast(midstate[i]);
    transform8(state, w);

    // Second hash: digest words feed straight in as message words 0..7.
    v8 w2[16];
    for (int i = 0; i < 8; ++i) w2[i] = state[i];
    w2[8] = bcast(0x80000000u);
    for (int i = 9; i < 15; ++i) w2[i] = bcast(0);
    w2[15] = bcast(256);

    v8 st2[8] = {bcast(0x6a09e667), bcast(0xbb67ae85), bcast(0x3c6ef372),
                 bcast(0xa54ff53a), bcast(0x510e527f), bcast(0x9b05688c),
                 bcast(0x1f83d9ab), bcast(0x5be0cd19)};
    transform8(st2, w2);

    alignas(32) uint32_t words[8][8];
    for (int i = 0; i < 8; ++i)
        _mm256_store_si256(reinterpret_cast<v8*>(words[i]), st2[i]);
    for (int lane = 0; lane < 8; ++lane) {
        uint8_t* d = out + 32 * lane;
        for (int i = 0; i < 8; ++i) {
            uint32_t v = words[i][lane];
            d[4 * i + 0] = uint8_t(v >> 24);
            d[4 * i + 1] = uint8_t(v >> 16);
            d[4 * i + 2] = uint8_t(v >> 8);
            d[4 * i + 3] = uint8_t(v);
        }
    }
}

}  // namespace

bool supported() { return __builtin_cpu_supports("avx2"); }

void hash_range(const uint8_t header[kHeaderSize], uint64_t nonce_base,
                std::size_t count, uint8_t* digests_out) {
    uint32_t midstate[8];
    Sha256::init_state(midstate);
    Sha256::transform(midstate, header);

    uint8_t tail[64] = {};
    std::memcpy(tail, header + 64, kHeaderSize - 64);
    tail[kHeaderSize - 64] = 0x80;
    tail[62] = 0x02;
    tail[63] = 0xC0;

    std::size_t done = 0;
    while (done + 8 <= count) {
        hash_batch8(midstate, tail, nonce_base + done, digests_out + 32 * done);
        done += 8;
    }
    if (done < count) {
        uint8_t scratch[8 * 32];
        hash_batch8(midstate, tail, nonce_base + done, scratch);
        std::memcpy(digests_out + 32 * done, scratch, 32 * (count - done));
    }
}

}  // namespace pow_avx2
}  // namespace minichain

#endif  // MINICHAIN_WITH_AVX2
