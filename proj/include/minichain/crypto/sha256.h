// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CRYPTO_SHA256_H
#define MINICHAIN_CRYPTO_SHA256_H

#include <cstdint>

#include "minichain/util/bytes.h"

namespace minichain {

/// Streaming SHA-256 (FIPS 180-4).
class Sha256 {
public:
    Sha256() { reset(); }

    Sha256& write(ByteSpan data);
    Digest32 finalize();
    void reset();

    static constexpr std::size_t kBlockSize = 64;

    /// One compression round over a 64-byte block; scalar reference kernel,
    /// also the baseline the SIMD variants are equivalence-tested against.
    static void transform(uint32_t state[8], const uint8_t block[64]);
    static void init_state(uint32_t state[8]);

private:
    uint32_t state_[8];
    uint8_t buf_[64];
    uint64_t total_len_ = 0;
};

/// Single-shot SHA-256.
Digest32 sha256(ByteSpan data);

/// Double SHA-256; the block/transaction id convention.
Digest32 hash256(ByteSpan data);

/// First 20 bytes of hash256; the pubkey/script hash convention.
Digest20 hash20(ByteSpan data);

}  // namespace minichain

#endif  // MINICHAIN_CRYPTO_SHA256_H
