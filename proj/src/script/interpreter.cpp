// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/script/interpreter.h"

#include "minichain/crypto/sha256.h"

namespace minichain {

namespace {

using Stack = std::vector<Bytes>;

bool truthy(const Bytes& v) {
    for (uint8_t b : v)
        if (b != 0) return true;
    return false;
}

// Stack counts are pushed by OP_0 / OP_1..OP_16: empty or one byte.
int decode_count(const Bytes& v) {
    if (v.empty()) return 0;
    if (v.size() == 1 && v[0] >= 1 && v[0] <= 16) return v[0];
    return -1;
}

struct Machine {
    explicit Machine(const ExecContext& c) : ctx(c) {}

    const ExecContext& ctx;
    Stack stack;
    unsigned ops_used = 0;
    // Tracks whether the current top was pushed by a failed signature check,
    // so a final false top reports sig_fail rather than false_top.
    bool top_is_sig_failure = false;

    void push(Bytes v, bool from_failed_sig = false) {
        stack.push_back(std::move(v));
        top_is_sig_failure = from_failed_sig;
    }

    ScriptFailure run(ByteSpan code) {
        std::size_t pc = 0;
        while (pc < code.size()) {
            if (++ops_used > kOpcodeBudget) return ScriptFailure::op_limit;
            uint8_t op = code[pc++];

            // pushes
            if (op >= 0x01 && op <= kMaxDirectPush) {
                if (pc + op > code.size()) return ScriptFailure::push_overflow;
                push(Bytes(code.begin() + pc, code.begin() + pc + op));
                pc += op;
                continue;
            }
            if (op == OP_PUSHDATA1 || op == OP_PUSHDATA2) {
                std::size_t len_bytes = (op == OP_PUSHDATA1) ? 1 : 2;
                if (pc + len_bytes > code.size()) return ScriptFailure::push_overflow;
                std::size_t len = code[pc];
                if (op == OP_PUSHDATA2) len |= std::size_t(code[pc + 1]) << 8;
                pc += len_bytes;
                if (len > kMaxElementSize || pc + len > code.size())
                    return ScriptFailure::push_overflow;
                push(Bytes(code.begin() + pc, code.begin() + pc + len));
                pc += len;
                continue;
            }
            if (op == OP_0) {
                push(Bytes{});
                continue;
            }
            if (op >= OP_1 && op <= OP_16) {
                push(Bytes{uint8_t(op - OP_1 + 1)});
                continue;
            }

            switch (op) {
                case OP_DUP: {
                    if (stack.empty()) return ScriptFailure::empty_stack;
                    push(stack.back());
                    break;
                }
                case OP_HASH20: {
                    if (stack.empty()) return ScriptFailure::empty_stack;
                    Digest20 h = hash20(stack.back());
                    stack.pop_back();
                    push(Bytes(h.bytes.begin(), h.bytes.end()));
                    break;
                }
                case OP_EQUAL:
                case OP_EQUALVERIFY: {
                    if (stack.size() < 2) return ScriptFailure::empty_stack;
                    bool equal = stack[stack.size() - 1] == stack[stack.size() - 2];
                    stack.pop_back();
                    stack.pop_back();
                    if (op == OP_EQUALVERIFY) {
                        if (!equal) return ScriptFailure::false_top;
                    } else {
                        push(equal ? Bytes{1} : Bytes{});
                    }
                    break;
                }
                case OP_CHECKSIG: {
                    if (stack.size() < 2) return ScriptFailure::empty_stack;
                    Bytes pubkey_bytes = std::move(stack.back());
                    stack.pop_back();
                    Bytes sig_bytes = std::move(stack.back());
                    stack.pop_back();
                    bool valid = false;
                    if (pubkey_bytes.size() == 33) {
                        PublicKey pk;
                        std::copy(pubkey_bytes.begin(), pubkey_bytes.end(), pk.bytes.begin());
                        valid = verify(pk, sighash(ctx.tx, ctx.input_index),
                                       Signature{std::move(sig_bytes)});
                    }
                    push(valid ? Bytes{1} : Bytes{}, !valid);
                    break;
                }
                case OP_CHECKMULTISIG: {
                    if (stack.empty()) return ScriptFailure::empty_stack;
                    int n = decode_count(stack.back());
                    stack.pop_back();
                    if (n < 0 || stack.size() < std::size_t(n) + 1)
                        return ScriptFailure::empty_stack;
                    std::vector<Bytes> keys(n);
                    for (int i = n - 1; i >= 0; --i) {
                        keys[i] = std::move(stack.back());
                        stack.pop_back();
                    }
                    int m = decode_count(stack.back());
                    stack.pop_back();
                    if (m < 0 || m > n) return ScriptFailure::bad_opcode;
                    if (stack.size() < std::size_t(m)) return ScriptFailure::empty_stack;
                    std::vector<Bytes> sigs(m);
                    for (int i = m - 1; i >= 0; --i) {
                        sigs[i] = std::move(stack.back());
                        stack.pop_back();
                    }

                    // In-order matching: walk the keys once, each key tried
                    // at most once; all M signatures must land.
                    Digest32 digest = sighash(ctx.tx, ctx.input_index);
                    std::size_t si = 0;
                    for (int ki = 0; ki < n && si < sigs.size(); ++ki) {
                        if (keys[ki].size() != 33) continue;
                        PublicKey pk;
                        std::copy(keys[ki].begin(), keys[ki].end(), pk.bytes.begin());
                        if (verify(pk, digest, Signature{sigs[si]})) ++si;
                    }
                    bool valid = si == sigs.size();
                    push(valid ? Bytes{1} : Bytes{}, !valid);
                    break;
                }
                default:
                    return ScriptFailure::bad_opcode;
            }
        }
        return ScriptFailure::none;
    }
};

EvalResult finish(const Machine& m) {
    if (m.stack.empty()) return EvalResult::fail(ScriptFailure::empty_stack);
    if (!truthy(m.stack.back()))
        return EvalResult::fail(m.top_is_sig_failure ? ScriptFailure::sig_fail
                                                     : ScriptFailure::false_top);
    return EvalResult::ok();
}

}  // namespace

std::string_view to_string(ScriptFailure f) {
    switch (f) {
        case ScriptFailure::none: return "none";
        case ScriptFailure::empty_stack: return "empty-stack";
        case ScriptFailure::false_top: return "false-top";
        case ScriptFailure::bad_opcode: return "bad-opcode";
        case ScriptFailure::push_overflow: return "push-overflow";
        case ScriptFailure::sig_fail: return "sig-fail";
        case ScriptFailure::redeem_mismatch: return "redeem-mismatch";
        case ScriptFailure::op_limit: return "op-limit";
    }
    return "unknown";
}

EvalResult eval(const Script& script_sig, const Script& script_pubkey, const ExecContext& ctx) {
    Machine machine(ctx);

    if (auto failure = machine.run(script_sig.bytes); failure != ScriptFailure::none)
        return EvalResult::fail(failure);

    if (auto committed = match_p2sh(script_pubkey)) {
        // The top script_sig push is the redeem script; it must hash to the
        // committed value and then satisfy itself on the remaining stack.
        if (machine.stack.empty()) return EvalResult::fail(ScriptFailure::empty_stack);
        Bytes redeem_bytes = std::move(machine.stack.back());
        machine.stack.pop_back();
        if (hash20(redeem_bytes) != *committed)
            return EvalResult::fail(ScriptFailure::redeem_mismatch);
        if (auto failure = machine.run(redeem_bytes); failure != ScriptFailure::none)
            return EvalResult::fail(failure);
        return finish(machine);
    }

    if (auto failure = machine.run(script_pubkey.bytes); failure != ScriptFailure::none)
        return EvalResult::fail(failure);
    return finish(machine);
}

bool is_final(const Transaction& tx, uint64_t block_time) {
    return tx.lock_time == 0 || block_time >= tx.lock_time;
}

}  // namespace minichain
