// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/consensus/pow.h"

#include <stdexcept>

#include "minichain/core/serialize.h"
#include "minichain/crypto/pow_hasher.h"

namespace minichain {

U256 bits_to_target(uint32_t bits) {
    uint32_t exponent = bits >> 24;
    uint32_t mantissa = bits & 0x00FFFFFF;
    U256 m(mantissa);
    if (exponent < 3) return m >> (8 * (3 - exponent));
    unsigned shift = 8 * (exponent - 3);
    U256 target = m << shift;
    // an exponent that shifts mantissa bits out encodes no valid target
    if (!(target >> shift == m)) return U256::zero();
    return target;
}

uint32_t target_to_bits(const U256& target) {
    if (target.is_zero()) return 0;
    unsigned byte_len = (target.bit_length() + 7) / 8;
    uint32_t mantissa;
    if (byte_len <= 3)
        mantissa = uint32_t((target << (8 * (3 - byte_len))).low64());
    else
        mantissa = uint32_t((target >> (8 * (byte_len - 3))).low64());
    return (uint32_t(byte_len) << 24) | mantissa;
}

bool hash_meets_target(const Digest32& hash, const U256& target) {
    return U256::from_be_bytes(hash) <= target;
}

bool check_pow(const BlockHeader& header, const ChainParams& params) {
    U256 target = bits_to_target(header.bits);
    if (target.is_zero() || target > params.max_target()) return false;
    return hash_meets_target(block_hash(header), target);
}

U256 retarget(const U256& old_target, uint64_t actual_timespan, const ChainParams& params) {
    if (actual_timespan == 0) throw std::invalid_argument("retarget: timespan must be positive");

    uint64_t expected = uint64_t(params.retarget_interval) * params.target_spacing;
    uint64_t clamped = actual_timespan;
    if (clamped < expected / params.clamp_factor) clamped = expected / params.clamp_factor;
    if (clamped > expected * params.clamp_factor) clamped = expected * params.clamp_factor;

    // old * clamped / expected with a 320-bit intermediate
    uint64_t carry = 0;
    U256 prod = old_target.mul_u64(clamped, &carry);
    // divide (carry*2^256 + prod) by expected, limb by limb from the top
    U256 result;
    unsigned __int128 rem = carry;
    for (int i = 3; i >= 0; --i) {
        unsigned __int128 cur = (rem << 64) | prod.limbs()[i];
        result.limbs()[i] = uint64_t(cur / expected);
        rem = cur % expected;
    }
    if (carry / expected != 0 || result > params.max_target()) return params.max_target();
    return result;
}

U256 chain_work(const U256& target) {
    if (target.is_zero()) throw std::invalid_argument("chain_work: zero target");
    // floor(2^256 / (t+1)) == floor((2^256 - t - 1) / (t+1)) + 1 == ~t / (t+1) + 1,
    // which avoids 512-bit arithmetic.
    U256 t_plus_1 = target + U256::one();
    if (t_plus_1.is_zero()) return U256::one();  // target == 2^256 - 1
    return U256::divide(~target, t_plus_1) + U256::one();
}

std::optional<uint64_t> pow_search(const BlockHeader& header, const U256& target,
                                   uint64_t start_nonce, uint64_t max_attempts) {
    const PowHasher& hasher = PowHasher::best();
    Bytes serialized = serialize_header(header);

    constexpr std::size_t kBatch = 64;
    uint8_t digests[kBatch * 32];
    uint64_t done = 0;
    while (done < max_attempts) {
        std::size_t n = std::size_t(std::min<uint64_t>(kBatch, max_attempts - done));
        hasher.hash_range(serialized.data(), start_nonce + done, n, digests);
        for (std::size_t i = 0; i < n; ++i) {
            Digest32 d = Digest32::from_span(ByteSpan(digests + 32 * i, 32));
            if (hash_meets_target(d, target)) return start_nonce + done + i;
        }
        done += n;
    }
    return std::nullopt;
}

}  // namespace minichain
