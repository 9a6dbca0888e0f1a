// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CRYPTO_POW_HASHER_H
#define MINICHAIN_CRYPTO_POW_HASHER_H

#include <cstdint>
#include <string>
#include <vector>

#include "minichain/util/bytes.h"

namespace minichain {

/// Canonical serialized header size: version u32 | prev 32B | commitment 32B |
/// time u64 | bits u32 | nonce u64, little-endian integers.
constexpr std::size_t kHeaderSize = 88;
constexpr std::size_t kHeaderNonceOffset = 80;

/// Batched hash256 of an 88-byte header over consecutive nonce values.
///
/// The nonce search is the one data-parallel inner loop in this codebase, so
/// it is the one place with SIMD variants: a scalar reference kernel plus an
/// AVX2 8-way kernel, selected at runtime and equivalence-tested against each
/// other. Both reuse the midstate of the header's first 64 bytes, which do
/// not depend on the nonce.
class PowHasher {
public:
    using KernelFn = void (*)(const uint8_t header[kHeaderSize], uint64_t nonce_base,
                              std::size_t count, uint8_t* digests_out);

    PowHasher(std::string name, std::size_t lanes, KernelFn fn)
        : name_(std::move(name)), lanes_(lanes), fn_(fn) {}

    const std::string& name() const { return name_; }
    std::size_t lanes() const { return lanes_; }

    /// Writes count digests (32 bytes each) for nonces nonce_base .. nonce_base+count-1.
    void hash_range(const uint8_t header[kHeaderSize], uint64_t nonce_base,
                    std::size_t count, uint8_t* digests_out) const {
        fn_(header, nonce_base, count, digests_out);
    }

    /// Kernels usable on this machine; index 0 is the scalar reference.
    static const std::vector<PowHasher>& available();

    /// Widest available kernel (AVX2 when the CPU supports it).
    static const PowHasher& best();

private:
    std::string name_;
    std::size_t lanes_;
    KernelFn fn_;
};

}  // namespace minichain

#endif  // MINICHAIN_CRYPTO_POW_HASHER_H
