// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_SCRIPT_INTERPRETER_H
#define MINICHAIN_SCRIPT_INTERPRETER_H

#include <string_view>

#include "minichain/core/transaction.h"
#include "minichain/script/script.h"

namespace minichain {

/// Why an evaluation was not accepted. Execution is total: malformed
/// scripts produce a reason, never an abort.
enum class ScriptFailure {
    none,
    empty_stack,
    false_top,
    bad_opcode,
    push_overflow,
    sig_fail,
    redeem_mismatch,
    op_limit,
};

std::string_view to_string(ScriptFailure f);

struct EvalResult {
    bool accepted = false;
    ScriptFailure failure_reason = ScriptFailure::none;

    static EvalResult ok() { return {true, ScriptFailure::none}; }
    static EvalResult fail(ScriptFailure f) { return {false, f}; }
};

/// Execution context for signature checks: CHECKSIG verifies against
/// sighash(tx, input_index).
struct ExecContext {
    const Transaction& tx;
    std::size_t input_index;
};

constexpr unsigned kOpcodeBudget = 1000;

/// Runs script_sig then script_pubkey on one shared stack, left to right.
/// P2SH rule: when script_pubkey is OP_HASH20 <20B> OP_EQUAL, the top
/// script_sig push is re-interpreted as the redeem script and executed
/// against the remaining stack. Accepted iff the final top element is
/// truthy (empty and all-zero strings are false).
EvalResult eval(const Script& script_sig, const Script& script_pubkey, const ExecContext& ctx);

/// Locktime finality: final iff lock_time == 0 or block_time >= lock_time.
bool is_final(const Transaction& tx, uint64_t block_time);

}  // namespace minichain

#endif  // MINICHAIN_SCRIPT_INTERPRETER_H
