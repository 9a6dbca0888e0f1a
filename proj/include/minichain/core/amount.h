// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CORE_AMOUNT_H
#define MINICHAIN_CORE_AMOUNT_H

#include <cstdint>
#include <string>

namespace minichain {

/// Base units; 1 coin = 10^8 units. No floating point in consensus.
using Amount = int64_t;

constexpr Amount kCoin = 100'000'000;
constexpr Amount kMaxMoney = 21'000'000 * kCoin;

inline bool money_range(Amount a) { return a >= 0 && a <= kMaxMoney; }

/// Fixed 8-decimal rendering, e.g. 50.00000000.
std::string format_amount(Amount a);

}  // namespace minichain

#endif  // MINICHAIN_CORE_AMOUNT_H
