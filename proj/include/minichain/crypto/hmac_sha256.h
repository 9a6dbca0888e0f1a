// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CRYPTO_HMAC_SHA256_H
#define MINICHAIN_CRYPTO_HMAC_SHA256_H

#include "minichain/util/bytes.h"

namespace minichain {

Digest32 hmac_sha256(ByteSpan key, ByteSpan message);

}  // namespace minichain

#endif  // MINICHAIN_CRYPTO_HMAC_SHA256_H
