// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CORE_PARAMS_H
#define MINICHAIN_CORE_PARAMS_H

#include <optional>
#include <string_view>

#include "minichain/core/amount.h"
#include "minichain/util/u256.h"

namespace minichain {

struct ChainParams {
    Amount initial_subsidy = 50 * kCoin;
    uint32_t halving_interval = 150;
    uint32_t retarget_interval = 32;
    uint64_t target_spacing = 1;  // simulated seconds per block
    uint32_t max_target_bits = 0x20FFFFFF;
    uint32_t clamp_factor = 4;
    uint32_t coinbase_maturity = 10;
    uint32_t network_magic = 0x4D494E49;  // "MINI"

    U256 max_target() const;

    /// All fields positive and the geometric supply bound respected.
    bool valid() const;
};

/// Desk-scale defaults: acceptance suites finish in seconds.
ChainParams simnet_params();

/// Bitcoin-shaped schedule (50 coins, halving every 210,000 blocks,
/// retarget every 2016, 600 s spacing); used for closed-form supply checks.
ChainParams mainnet_like_params();

std::optional<ChainParams> params_by_name(std::string_view name);

}  // namespace minichain

#endif  // MINICHAIN_CORE_PARAMS_H
