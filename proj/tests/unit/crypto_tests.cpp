// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <cstring>
#include <stdexcept>

#include "doctest.h"
#include "minichain/crypto/base58.h"
#include "minichain/crypto/ecdsa.h"
#include "minichain/crypto/hmac_sha256.h"
#include "minichain/crypto/pow_hasher.h"
#include "minichain/crypto/sha256.h"
#include "minichain/util/rng.h"

using namespace minichain;

namespace {

std::string sha_hex(std::string_view s) {
    return hex_encode(sha256(to_bytes(s)));
}

unsigned hamming(const Digest32& a, const Digest32& b) {
    unsigned bits = 0;
    for (int i = 0; i < 32; ++i) bits += unsigned(__builtin_popcount(a.bytes[i] ^ b.bytes[i]));
    return bits;
}

}  // namespace

TEST_CASE("sha256 matches the published standard vectors") {
    CHECK(sha_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    Bytes million(1'000'000, uint8_t('a'));
    CHECK(hex_encode(sha256(million)) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("sha256 output is 32 bytes and repeatable") {
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        Bytes data(rng.next_below(300));
        for (auto& b : data) b = uint8_t(rng.next_u64());
        Digest32 first = sha256(data);
        CHECK(first.size() == 32);
        CHECK(sha256(data) == first);
    }
}

TEST_CASE("sha256 streaming equals one-shot across chunk splits") {
    Rng rng(2);
    Bytes data(4096);
    for (auto& b : data) b = uint8_t(rng.next_u64());
    Digest32 whole = sha256(data);
    for (std::size_t chunk : {1u, 3u, 63u, 64u, 65u, 1000u}) {
        Sha256 h;
        for (std::size_t off = 0; off < data.size(); off += chunk) {
            std::size_t n = std::min(chunk, data.size() - off);
            h.write(ByteSpan(data.data() + off, n));
        }
        CHECK(h.finalize() == whole);
    }
}

TEST_CASE("one-bit change flips a large fraction of output bits") {
    Digest32 a = sha256(to_bytes("abc"));
    Digest32 b = sha256(to_bytes("abd"));
    CHECK(hamming(a, b) >= 256 * 30 / 100);
}

TEST_CASE("avalanche: mean hamming distance over 1000 single-bit flips") {
    Rng rng(3);
    uint64_t total = 0;
    for (int i = 0; i < 1000; ++i) {
        Bytes data(1 + rng.next_below(120));
        for (auto& b : data) b = uint8_t(rng.next_u64());
        Digest32 before = sha256(data);
        std::size_t byte = rng.next_below(data.size());
        data[byte] ^= uint8_t(1u << rng.next_below(8));
        total += hamming(before, sha256(data));
    }
    double mean = double(total) / 1000.0;
    CHECK(mean >= 112.0);
    CHECK(mean <= 144.0);
}

TEST_CASE("hash256 is sha256 composed with itself") {
    for (std::string_view s : {"", "abc", "minichain"}) {
        Digest32 inner = sha256(to_bytes(s));
        CHECK(hash256(to_bytes(s)) == sha256(ByteSpan(inner.bytes)));
    }
    CHECK(hash256(to_bytes("")) != sha256(to_bytes("")));
}

TEST_CASE("hash20 is the 20-byte prefix of hash256") {
    for (std::string_view s : {"x", "script-one", "script-two"}) {
        Digest32 full = hash256(to_bytes(s));
        Digest20 short_hash = hash20(to_bytes(s));
        CHECK(std::memcmp(short_hash.data(), full.data(), 20) == 0);
    }
    CHECK(hash20(to_bytes("script-one")) != hash20(to_bytes("script-two")));
}

TEST_CASE("hmac-sha256 matches RFC 4231 test case 2") {
    Digest32 mac = hmac_sha256(to_bytes("Jefe"), to_bytes("what do ya want for nothing?"));
    CHECK(hex_encode(mac) ==
          "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843");
}

TEST_CASE("keypair generation is deterministic per seed") {
    KeyPair a1 = keypair_generate(to_bytes("alice"));
    KeyPair a2 = keypair_generate(to_bytes("alice"));
    KeyPair b = keypair_generate(to_bytes("bob"));
    CHECK(a1 == a2);
    CHECK(a1.public_key != b.public_key);
    CHECK_THROWS_AS(keypair_generate(ByteSpan{}), std::invalid_argument);
}

TEST_CASE("public key is the curve derivation of the secret key") {
    KeyPair kp = keypair_generate(to_bytes("derivation-check"));
    CHECK(derive_public_key(kp.secret_key) == kp.public_key);
    CHECK(public_key_valid(kp.public_key));
    CHECK((kp.public_key.bytes[0] == 0x02 || kp.public_key.bytes[0] == 0x03));
}

TEST_CASE("fixed test key: frozen pubkey and pubkey-hash vectors") {
    // generated once at build time, re-verified every run
    KeyPair kp = keypair_generate(to_bytes("golden-test-key"));
    CHECK(hex_encode(ByteSpan(kp.public_key.bytes)) ==
          "026bb873c816cace96994730dfe73ebefde7e3550d51b33f8e3bf372cf7b173e6e");
    CHECK(hex_encode(hash20(ByteSpan(kp.public_key.bytes))) ==
          "90dcfb1669f3a57ca5dbe79cc757c95f644ccab1");
}

TEST_CASE("sign/verify round trip and rejection cases") {
    KeyPair alice = keypair_generate(to_bytes("alice"));
    KeyPair bob = keypair_generate(to_bytes("bob"));
    Digest32 digest = sha256(to_bytes("a message"));

    Signature sig = sign(alice.secret_key, digest);
    CHECK(verify(alice.public_key, digest, sig));

    // determinism of the nonce scheme
    CHECK(sign(alice.secret_key, digest).bytes == sig.bytes);

    // a different key does not verify
    CHECK_FALSE(verify(bob.public_key, digest, sig));

    // flipping any bit of the digest invalidates the signature
    for (int bit : {0, 77, 255}) {
        Digest32 tampered = digest;
        tampered.bytes[bit / 8] ^= uint8_t(1u << (bit % 8));
        CHECK_FALSE(verify(alice.public_key, tampered, sig));
    }

    // malformed signatures return false, never abort
    CHECK_FALSE(verify(alice.public_key, digest, Signature{}));
    CHECK_FALSE(verify(alice.public_key, digest, Signature{Bytes(63, 0xAB)}));
    CHECK_FALSE(verify(alice.public_key, digest, Signature{Bytes(64, 0x00)}));
    CHECK_FALSE(verify(alice.public_key, digest, Signature{Bytes(65, 0xAB)}));
    Signature corrupted = sig;
    corrupted.bytes[10] ^= 0x40;
    CHECK_FALSE(verify(alice.public_key, digest, corrupted));
}

TEST_CASE("signatures from many keys verify only against their own key") {
    Digest32 digest = sha256(to_bytes("cross-check"));
    std::vector<KeyPair> keys;
    for (int i = 0; i < 6; ++i)
        keys.push_back(keypair_generate(to_bytes("key-" + std::to_string(i))));
    for (int i = 0; i < 6; ++i) {
        Signature sig = sign(keys[i].secret_key, digest);
        for (int j = 0; j < 6; ++j) CHECK(verify(keys[j].public_key, digest, sig) == (i == j));
    }
}

TEST_CASE("base58check burn address vector") {
    Address burn = encode_address(0x00, Digest20{});
    CHECK(burn.text == "1111111111111111111114oLvT2");
}

TEST_CASE("p2sh-version addresses are 34 chars starting with 3") {
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        Digest20 payload;
        for (auto& b : payload.bytes) b = uint8_t(rng.next_u64());
        Address a = encode_address(kVersionP2SH, payload);
        CHECK(a.text.size() == 34);
        CHECK(a.text[0] == '3');
    }
}

TEST_CASE("address round trip over every version byte") {
    Rng rng(5);
    for (unsigned version = 0; version < 256; ++version) {
        Digest20 payload;
        for (auto& b : payload.bytes) b = uint8_t(rng.next_u64());
        Address a = encode_address(uint8_t(version), payload);
        auto decoded = decode_address(a.text);
        REQUIRE(decoded.has_value());
        CHECK(decoded->first == version);
        CHECK(decoded->second == payload);
    }
}

TEST_CASE("decode distinguishes bad characters from bad checksums") {
    Address a = encode_address(0x00, hash20(to_bytes("payload")));

    AddressError err = AddressError::none;
    std::string bad_char = a.text;
    bad_char[5] = '0';  // not in the alphabet
    CHECK_FALSE(decode_address(bad_char, &err).has_value());
    CHECK(err == AddressError::bad_character);

    std::string bad_check = a.text;
    bad_check[5] = bad_check[5] == 'x' ? 'y' : 'x';
    CHECK_FALSE(decode_address(bad_check, &err).has_value());
    CHECK(err == AddressError::bad_checksum);
}

TEST_CASE("checksum rejects 10000 random single-character corruptions") {
    Rng rng(6);
    const char* alphabet = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
    unsigned accepted = 0;
    for (int i = 0; i < 10'000; ++i) {
        Digest20 payload;
        for (auto& b : payload.bytes) b = uint8_t(rng.next_u64());
        Address a = encode_address(uint8_t(rng.next_below(256)), payload);
        std::string corrupted = a.text;
        std::size_t pos = rng.next_below(corrupted.size());
        char replacement;
        do {
            replacement = alphabet[rng.next_below(58)];
        } while (replacement == corrupted[pos]);
        corrupted[pos] = replacement;
        if (decode_address(corrupted).has_value()) ++accepted;
    }
    CHECK(accepted == 0);
}

// ---- the PoW hash kernels: scalar reference vs SIMD variants ----

TEST_CASE("every pow kernel matches the streaming double-sha oracle") {
    const auto& kernels = PowHasher::available();
    REQUIRE(kernels.size() >= 1);
    CHECK(kernels[0].name() == "scalar");

    Rng rng(8);
    for (int trial = 0; trial < 6; ++trial) {
        uint8_t header[kHeaderSize];
        for (auto& b : header) b = uint8_t(rng.next_u64());
        uint64_t base = rng.next_u64();
        std::size_t count = 1 + rng.next_below(21);  // exercises partial batches

        for (const auto& kernel : kernels) {
            std::vector<uint8_t> digests(count * 32);
            kernel.hash_range(header, base, count, digests.data());
            for (std::size_t i = 0; i < count; ++i) {
                uint8_t expected_header[kHeaderSize];
                std::memcpy(expected_header, header, kHeaderSize);
                uint64_t nonce = base + i;
                for (int b = 0; b < 8; ++b)
                    expected_header[kHeaderNonceOffset + b] = uint8_t(nonce >> (8 * b));
                Digest32 expected = hash256(ByteSpan(expected_header, kHeaderSize));
                CHECK(std::memcmp(digests.data() + 32 * i, expected.data(), 32) == 0);
            }
        }
    }
}

TEST_CASE("simd kernels agree with the scalar reference exactly") {
    const auto& kernels = PowHasher::available();
    if (kernels.size() < 2) return;  // no SIMD on this machine

    Rng rng(9);
    uint8_t header[kHeaderSize];
    for (auto& b : header) b = uint8_t(rng.next_u64());

    constexpr std::size_t kCount = 64;
    std::vector<uint8_t> reference(kCount * 32);
    kernels[0].hash_range(header, 0xFFFFFFFFFFFFFFF0ULL, kCount, reference.data());

    for (std::size_t k = 1; k < kernels.size(); ++k) {
        std::vector<uint8_t> out(kCount * 32);
        kernels[k].hash_range(header, 0xFFFFFFFFFFFFFFF0ULL, kCount, out.data());
        CHECK(out == reference);
        CHECK(kernels[k].lanes() > 1);
    }
}
