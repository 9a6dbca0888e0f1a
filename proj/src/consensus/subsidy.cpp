// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/consensus/subsidy.h"

namespace minichain {

Amount block_subsidy(uint64_t height, const ChainParams& params) {
    uint64_t halvings = height / params.halving_interval;
    if (halvings >= 63) return 0;
    return params.initial_subsidy >> halvings;
}

Amount cumulative_supply(uint64_t height, const ChainParams& params) {
    Amount total = 0;
    uint64_t full_epochs = height / params.halving_interval;
    for (uint64_t k = 0; k < full_epochs; ++k) {
        Amount per_block = block_subsidy(k * params.halving_interval, params);
        if (per_block == 0) return total;
        total += per_block * Amount(params.halving_interval);
    }
    Amount per_block = block_subsidy(height, params);
    uint64_t blocks_into_epoch = height - full_epochs * params.halving_interval + 1;
    total += per_block * Amount(blocks_into_epoch);
    return total;
}

Amount asymptotic_supply(const ChainParams& params) {
    Amount total = 0;
    for (uint64_t k = 0; k < 63; ++k) {
        Amount per_block = params.initial_subsidy >> k;
        if (per_block == 0) break;
        total += per_block * Amount(params.halving_interval);
    }
    return total;
}

}  // namespace minichain
