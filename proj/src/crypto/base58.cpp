// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/crypto/base58.h"

#include <algorithm>
#include <cstring>

#include "minichain/crypto/sha256.h"

namespace minichain {

namespace {

const char* kAlphabet = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

int alphabet_index(char c) {
    const char* p = std::strchr(kAlphabet, c);
    if (!p || c == '\0') return -1;
    return int(p - kAlphabet);
}

}  // namespace

std::string base58_encode(ByteSpan data) {
    std::size_t zeroes = 0;
    while (zeroes < data.size() && data[zeroes] == 0) ++zeroes;

    // big-endian base-256 to base-58
    std::vector<uint8_t> digits;
    for (std::size_t i = zeroes; i < data.size(); ++i) {
        unsigned carry = data[i];
        for (auto& d : digits) {
            carry += unsigned(d) << 8;
            d = uint8_t(carry % 58);
            carry /= 58;
        }
        while (carry) {
            digits.push_back(uint8_t(carry % 58));
            carry /= 58;
        }
    }

    std::string out(zeroes, '1');
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) out.push_back(kAlphabet[*it]);
    return out;
}

std::optional<Bytes> base58_decode(std::string_view text) {
    std::size_t ones = 0;
    while (ones < text.size() && text[ones] == '1') ++ones;

    std::vector<uint8_t> bytes;
    for (std::size_t i = ones; i < text.size(); ++i) {
        int v = alphabet_index(text[i]);
        if (v < 0) return std::nullopt;
        unsigned carry = unsigned(v);
        for (auto& b : bytes) {
            carry += unsigned(b) * 58;
            b = uint8_t(carry);
            carry >>= 8;
        }
        while (carry) {
            bytes.push_back(uint8_t(carry));
            carry >>= 8;
        }
    }

    Bytes out(ones, 0);
    out.insert(out.end(), bytes.rbegin(), bytes.rend());
    return out;
}

Address encode_address(uint8_t version, const Digest20& payload) {
    Bytes raw;
    raw.push_back(version);
    raw.insert(raw.end(), payload.bytes.begin(), payload.bytes.end());
    Digest32 check = hash256(raw);
    raw.insert(raw.end(), check.bytes.begin(), check.bytes.begin() + 4);

    Address addr;
    addr.version = version;
    addr.payload = payload;
    addr.text = base58_encode(raw);
    return addr;
}

std::optional<std::pair<uint8_t, Digest20>> decode_address(std::string_view text,
                                                           AddressError* error) {
    auto set_err = [&](AddressError e) {
        if (error) *error = e;
    };
    set_err(AddressError::none);

    // leading '1's are zero bytes, so the '1' check inside base58_decode is fine
    for (char c : text) {
        if (alphabet_index(c) < 0) {
            set_err(AddressError::bad_character);
            return std::nullopt;
        }
    }
    auto raw = base58_decode(text);
    if (!raw) {
        set_err(AddressError::bad_character);
        return std::nullopt;
    }
    if (raw->size() != 25) {
        set_err(AddressError::bad_length);
        return std::nullopt;
    }

    Digest32 check = hash256(ByteSpan(raw->data(), 21));
    if (!std::equal(check.bytes.begin(), check.bytes.begin() + 4, raw->begin() + 21)) {
        set_err(AddressError::bad_checksum);
        return std::nullopt;
    }

    Digest20 payload = Digest20::from_span(ByteSpan(raw->data() + 1, 20));
    return std::make_pair((*raw)[0], payload);
}

}  // namespace minichain
