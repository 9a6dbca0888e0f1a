// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/core/params.h"

#include "minichain/consensus/pow.h"

namespace minichain {

U256 ChainParams::max_target() const {
    return bits_to_target(max_target_bits);
}

bool ChainParams::valid() const {
    if (initial_subsidy <= 0 || halving_interval == 0 || retarget_interval == 0 ||
        target_spacing == 0 || clamp_factor == 0 || coinbase_maturity == 0)
        return false;
    if (bits_to_target(max_target_bits).is_zero()) return false;
    // geometric sum bound: total supply < 2 * subsidy * interval
    unsigned __int128 cap = (unsigned __int128)initial_subsidy * halving_interval * 2;
    return cap <= (unsigned __int128)kMaxMoney;
}

ChainParams simnet_params() {
    return ChainParams{};
}

ChainParams mainnet_like_params() {
    ChainParams p;
    p.initial_subsidy = 50 * kCoin;
    p.halving_interval = 210'000;
    p.retarget_interval = 2016;
    p.target_spacing = 600;
    p.coinbase_maturity = 100;
    return p;
}

std::optional<ChainParams> params_by_name(std::string_view name) {
    if (name == "simnet") return simnet_params();
    if (name == "mainnet-like") return mainnet_like_params();
    return std::nullopt;
}

}  // namespace minichain
