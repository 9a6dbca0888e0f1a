// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/crypto/hmac_sha256.h"

#include <cstring>

#include "minichain/crypto/sha256.h"

namespace minichain {

Digest32 hmac_sha256(ByteSpan key, ByteSpan message) {
    uint8_t block_key[64] = {};
    if (key.size() > 64) {
        Digest32 kh = sha256(key);
        std::memcpy(block_key, kh.bytes.data(), 32);
    } else {
        std::memcpy(block_key, key.data(), key.size());
    }

    uint8_t ipad[64], opad[64];
    for (int i = 0; i < 64; ++i) {
        ipad[i] = block_key[i] ^ 0x36;
        opad[i] = block_key[i] ^ 0x5c;
    }

    Sha256 inner;
    inner.write(ByteSpan(ipad, 64)).write(message);
    Digest32 inner_digest = inner.finalize();

    Sha256 outer;
    outer.write(ByteSpan(opad, 64)).write(ByteSpan(inner_digest.bytes));
    return outer.finalize();
}

}  // namespace minichain
