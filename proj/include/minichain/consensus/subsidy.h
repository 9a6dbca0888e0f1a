// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CONSENSUS_SUBSIDY_H
#define MINICHAIN_CONSENSUS_SUBSIDY_H

#include <cstdint>

#include "minichain/core/params.h"

namespace minichain {

/// Integer halving: floor(initial / 2^k), k = floor(height / halving_interval);
/// zero once the shift exhausts the value.
Amount block_subsidy(uint64_t height, const ChainParams& params);

/// Sum of block_subsidy over heights 0..height inclusive.
Amount cumulative_supply(uint64_t height, const ChainParams& params);

/// The limit of cumulative_supply: total coins that can ever exist.
Amount asymptotic_supply(const ChainParams& params);

}  // namespace minichain

#endif  // MINICHAIN_CONSENSUS_SUBSIDY_H
