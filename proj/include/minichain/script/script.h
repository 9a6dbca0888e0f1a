// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_SCRIPT_SCRIPT_H
#define MINICHAIN_SCRIPT_SCRIPT_H

#include <compare>
#include <optional>

#include "minichain/crypto/base58.h"
#include "minichain/crypto/ecdsa.h"
#include "minichain/util/bytes.h"

namespace minichain {

// Opcode numbering mirrors Bitcoin's for familiarity.
enum Opcode : uint8_t {
    OP_0 = 0x00,
    // 0x01..0x4B: direct push of that many bytes
    OP_PUSHDATA1 = 0x4C,
    OP_PUSHDATA2 = 0x4D,
    OP_1 = 0x51,
    OP_16 = 0x60,
    OP_DUP = 0x76,
    OP_EQUAL = 0x87,
    OP_EQUALVERIFY = 0x88,
    OP_HASH20 = 0xA9,
    OP_CHECKSIG = 0xAC,
    OP_CHECKMULTISIG = 0xAE,
};

constexpr std::size_t kMaxDirectPush = 0x4B;
constexpr std::size_t kMaxElementSize = 520;
constexpr std::size_t kMaxRedeemScriptSize = 520;

/// Byte-encoded stack program; lock and unlock halves share this encoding.
struct Script {
    Bytes bytes;

    auto operator<=>(const Script&) const = default;

    bool empty() const { return bytes.empty(); }
    std::size_t size() const { return bytes.size(); }

    Script& push_data(ByteSpan data);
    Script& push_opcode(Opcode op);
    Script& push_small_int(unsigned n);  // 0 -> OP_0, 1..16 -> OP_1..OP_16

    std::string to_hex() const { return hex_encode(ByteSpan(bytes)); }
};

// Standard templates.
Script make_p2pk(const PublicKey& pubkey);
Script make_p2pkh(const Digest20& pubkey_hash);
Script make_p2sh(const Digest20& script_hash);

/// OP_m <pk1>..<pkN> OP_N OP_CHECKMULTISIG; requires 1 <= m <= N <= 16.
/// Throws std::invalid_argument on bound violations.
Script make_multisig(unsigned m, const std::vector<PublicKey>& pubkeys);

// Template recognizers used by validation and the wallet.
std::optional<Digest20> match_p2pkh(const Script& script_pubkey);
std::optional<Digest20> match_p2sh(const Script& script_pubkey);
std::optional<PublicKey> match_p2pk(const Script& script_pubkey);

/// Base58Check address (version 0x05) of a redeem script; always 34
/// characters with prefix '3'. Throws std::invalid_argument when the
/// redeem script exceeds 520 bytes.
Address p2sh_address(const Script& redeem);

}  // namespace minichain

#endif  // MINICHAIN_SCRIPT_SCRIPT_H
