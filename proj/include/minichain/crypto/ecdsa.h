// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CRYPTO_ECDSA_H
#define MINICHAIN_CRYPTO_ECDSA_H

#include <array>
#include <compare>

#include "minichain/util/bytes.h"

namespace minichain {

/// secp256k1 scalar, big-endian. Never serialized into chain data.
struct SecretKey {
    std::array<uint8_t, 32> bytes{};
    auto operator<=>(const SecretKey&) const = default;
};

/// Compressed SEC1 encoding: parity byte 0x02/0x03 followed by x.
struct PublicKey {
    std::array<uint8_t, 33> bytes{};
    auto operator<=>(const PublicKey&) const = default;
    Bytes to_bytes() const { return Bytes(bytes.begin(), bytes.end()); }
};

/// 64-byte r||s when well formed; arbitrary bytes verify as false rather
/// than erroring.
struct Signature {
    Bytes bytes;
    auto operator<=>(const Signature&) const = default;
};

struct KeyPair {
    SecretKey secret_key;
    PublicKey public_key;
    auto operator<=>(const KeyPair&) const = default;
};

/// Deterministic key derivation from a seed; identical seeds give identical
/// pairs. Throws std::invalid_argument on an empty seed.
KeyPair keypair_generate(ByteSpan seed);

PublicKey derive_public_key(const SecretKey& secret_key);

bool public_key_valid(const PublicKey& public_key);

/// ECDSA with deterministic (RFC-6979-style) nonces; low-s normalized.
Signature sign(const SecretKey& secret_key, const Digest32& digest);

/// True iff sig is valid for (public_key, digest). Total: malformed input
/// of any kind returns false.
bool verify(const PublicKey& public_key, const Digest32& digest, const Signature& sig);

}  // namespace minichain

#endif  // MINICHAIN_CRYPTO_ECDSA_H
