// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/crypto/pow_hasher.h"

#include <cstring>

#include "minichain/crypto/sha256.h"

namespace minichain {

namespace {

// Second-hash block: 32-byte digest | 0x80 | zeros | 256-bit length.
inline void second_hash(const uint32_t digest_state[8], uint8_t out[32]) {
    uint8_t block[64] = {};
    for (int i = 0; i < 8; ++i) {
        block[4 * i + 0] = uint8_t(digest_state[i] >> 24);
        block[4 * i + 1] = uint8_t(digest_state[i] >> 16);
        block[4 * i + 2] = uint8_t(digest_state[i] >> 8);
        block[4 * i + 3] = uint8_t(digest_state[i]);
    }
    block[32] = 0x80;
    block[62] = 0x01;  // 256 bits

    uint32_t state[8];
    Sha256::init_state(state);
    Sha256::transform(state, block);
    for (int i = 0; i < 8; ++i) {
        out[4 * i + 0] = uint8_t(state[i] >> 24);
        out[4 * i + 1] = uint8_t(state[i] >> 16);
        out[4 * i + 2] = uint8_t(state[i] >> 8);
        out[4 * i + 3] = uint8_t(state[i]);
    }
}

void hash_range_scalar(const uint8_t header[kHeaderSize], uint64_t nonce_base,
                       std::size_t count, uint8_t* digests_out) {
    // Midstate over bytes 0..63; the nonce lives at bytes 80..87.
    uint32_t midstate[8];
    Sha256::init_state(midstate);
    Sha256::transform(midstate, header);

    // Tail block: bytes 64..87, 0x80 pad, 704-bit message length.
    uint8_t tail[64] = {};
    std::memcpy(tail, header + 64, kHeaderSize - 64);
    tail[kHeaderSize - 64] = 0x80;
    tail[62] = 0x02;
    tail[63] = 0xC0;  // 88 * 8 = 704 bits

    for (std::size_t i = 0; i < count; ++i) {
        uint64_t nonce = nonce_base + i;
        for (int b = 0; b < 8; ++b)
            tail[kHeaderNonceOffset - 64 + b] = uint8_t(nonce >> (8 * b));

        uint32_t state[8];
        std::memcpy(state, midstate, sizeof(state));
        Sha256::transform(state, tail);
        second_hash(state, digests_out + 32 * i);
    }
}

}  // namespace

#ifdef MINICHAIN_WITH_AVX2
namespace pow_avx2 {
bool supported();
void hash_range(const uint8_t header[kHeaderSize], uint64_t nonce_base,
                std::size_t count, uint8_t* digests_out);
}  // namespace pow_avx2
#endif

const std::vector<PowHasher>& PowHasher::available() {
    static const std::vector<PowHasher> kernels = [] {
        std::vector<PowHasher> v;
        v.emplace_back("scalar", 1, &hash_range_scalar);
#ifdef MINICHAIN_WITH_AVX2
        if (pow_avx2::supported()) v.emplace_back("avx2", 8, &pow_avx2::hash_range);
#endif
        return v;
    }();
    return kernels;
}

const PowHasher& PowHasher::best() {
    return available().back();
}

}  // namespace minichain
