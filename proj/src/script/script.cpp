// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/script/script.h"

#include <stdexcept>

#include "minichain/crypto/sha256.h"

namespace minichain {

Script& Script::push_data(ByteSpan data) {
    if (data.size() <= kMaxDirectPush) {
        bytes.push_back(uint8_t(data.size()));
    } else if (data.size() <= 0xFF) {
        bytes.push_back(OP_PUSHDATA1);
        bytes.push_back(uint8_t(data.size()));
    } else if (data.size() <= kMaxElementSize) {
        bytes.push_back(OP_PUSHDATA2);
        bytes.push_back(uint8_t(data.size()));
        bytes.push_back(uint8_t(data.size() >> 8));
    } else {
        throw std::invalid_argument("push exceeds max element size");
    }
    bytes.insert(bytes.end(), data.begin(), data.end());
    return *this;
}

Script& Script::push_opcode(Opcode op) {
    bytes.push_back(op);
    return *this;
}

Script& Script::push_small_int(unsigned n) {
    if (n == 0) {
        bytes.push_back(OP_0);
    } else if (n <= 16) {
        bytes.push_back(uint8_t(OP_1 + n - 1));
    } else {
        throw std::invalid_argument("small int out of range");
    }
    return *this;
}

Script make_p2pk(const PublicKey& pubkey) {
    Script s;
    s.push_data(ByteSpan(pubkey.bytes)).push_opcode(OP_CHECKSIG);
    return s;
}

Script make_p2pkh(const Digest20& pubkey_hash) {
    Script s;
    s.push_opcode(OP_DUP).push_opcode(OP_HASH20);
    s.push_data(ByteSpan(pubkey_hash.bytes));
    s.push_opcode(OP_EQUALVERIFY).push_opcode(OP_CHECKSIG);
    return s;
}

Script make_p2sh(const Digest20& script_hash) {
    Script s;
    s.push_opcode(OP_HASH20);
    s.push_data(ByteSpan(script_hash.bytes));
    s.push_opcode(OP_EQUAL);
    return s;
}

Script make_multisig(unsigned m, const std::vector<PublicKey>& pubkeys) {
    if (m < 1 || pubkeys.size() < m || pubkeys.size() > 16)
        throw std::invalid_argument("multisig requires 1 <= m <= N <= 16");
    Script s;
    s.push_small_int(m);
    for (const auto& pk : pubkeys) s.push_data(ByteSpan(pk.bytes));
    s.push_small_int(unsigned(pubkeys.size()));
    s.push_opcode(OP_CHECKMULTISIG);
    return s;
}

std::optional<Digest20> match_p2pkh(const Script& s) {
    const Bytes& b = s.bytes;
    if (b.size() != 25) return std::nullopt;
    if (b[0] != OP_DUP || b[1] != OP_HASH20 || b[2] != 20 || b[23] != OP_EQUALVERIFY ||
        b[24] != OP_CHECKSIG)
        return std::nullopt;
    return Digest20::from_span(ByteSpan(b.data() + 3, 20));
}

std::optional<Digest20> match_p2sh(const Script& s) {
    const Bytes& b = s.bytes;
    if (b.size() != 23) return std::nullopt;
    if (b[0] != OP_HASH20 || b[1] != 20 || b[22] != OP_EQUAL) return std::nullopt;
    return Digest20::from_span(ByteSpan(b.data() + 2, 20));
}

std::optional<PublicKey> match_p2pk(const Script& s) {
    const Bytes& b = s.bytes;
    if (b.size() != 35) return std::nullopt;
    if (b[0] != 33 || b[34] != OP_CHECKSIG) return std::nullopt;
    PublicKey pk;
    std::copy(b.begin() + 1, b.begin() + 34, pk.bytes.begin());
    return pk;
}

Address p2sh_address(const Script& redeem) {
    if (redeem.size() > kMaxRedeemScriptSize)
        throw std::invalid_argument("redeem script exceeds " +
                                    std::to_string(kMaxRedeemScriptSize) + " bytes");
    return encode_address(kVersionP2SH, hash20(redeem.bytes));
}

}  // namespace minichain
