// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_CORE_GENESIS_H
#define MINICHAIN_CORE_GENESIS_H

#include <string_view>

#include "minichain/core/block.h"
#include "minichain/core/params.h"

namespace minichain {

constexpr std::string_view kDefaultGenesisMessage =
    "The Times 03/Jan/2009 Chancellor on brink of second bailout for banks";

constexpr std::size_t kMaxGenesisMessage = 1000;

/// Block #0: zero prev_hash, a single coinbase whose input script is exactly
/// the UTF-8 message, subsidy = params.initial_subsidy, PoW satisfied for
/// params.max_target. Throws std::invalid_argument on an empty or oversize
/// message.
Block make_genesis(const ChainParams& params, std::string_view message, uint64_t timestamp);

/// The embedded message of a genesis block built by make_genesis.
std::string genesis_message(const Block& genesis);

}  // namespace minichain

#endif  // MINICHAIN_CORE_GENESIS_H
