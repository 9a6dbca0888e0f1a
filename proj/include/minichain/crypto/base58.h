// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CRYPTO_BASE58_H
#define MINICHAIN_CRYPTO_BASE58_H

#include <string>

#include "minichain/util/bytes.h"

namespace minichain {

/// Base58Check address: version byte plus 20-byte payload, 4-byte
/// hash256 checksum. Version 0x00 is pay-to-pubkey-hash, 0x05 is
/// pay-to-script-hash (34 characters, '3' prefix).
struct Address {
    uint8_t version = 0;
    Digest20 payload;
    std::string text;

    auto operator<=>(const Address&) const = default;
};

constexpr uint8_t kVersionP2PKH = 0x00;
constexpr uint8_t kVersionP2SH = 0x05;

enum class AddressError { none, bad_character, bad_checksum, bad_length };

Address encode_address(uint8_t version, const Digest20& payload);

/// Distinguishes bad characters from bad checksums per the error out-param.
std::optional<std::pair<uint8_t, Digest20>> decode_address(std::string_view text,
                                                           AddressError* error = nullptr);

// Raw base58 (no checksum); exposed for tests.
std::string base58_encode(ByteSpan data);
std::optional<Bytes> base58_decode(std::string_view text);

}  // namespace minichain

#endif  // MINICHAIN_CRYPTO_BASE58_H
