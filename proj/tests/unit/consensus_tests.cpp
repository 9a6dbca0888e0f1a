// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <map>

#include "doctest.h"
#include "minichain/consensus/blocktree.h"
#include "minichain/consensus/miner.h"
#include "minichain/consensus/pow.h"
#include "minichain/consensus/replay.h"
#include "minichain/consensus/subsidy.h"
#include "minichain/core/genesis.h"
#include "minichain/core/serialize.h"
#include "minichain/crypto/sha256.h"
#include "minichain/util/rng.h"
#include "minichain/wallet/wallet.h"

using namespace minichain;

namespace {

// ---- independent big-integer oracle: floor(2^256 / (t+1)) in base 2^32 ----

std::vector<uint32_t> to_words(const U256& v) {
    std::vector<uint32_t> w(8);
    for (int i = 0; i < 4; ++i) {
        w[2 * i] = uint32_t(v.limbs()[i]);
        w[2 * i + 1] = uint32_t(v.limbs()[i] >> 32);
    }
    return w;
}

// schoolbook long division of 2^256 by divisor, one quotient bit at a time
U256 chain_work_oracle(const U256& target) {
    std::vector<uint32_t> divisor = to_words(target + U256::one());
    bool divisor_zero = true;
    for (uint32_t w : divisor) divisor_zero &= w == 0;
    if (divisor_zero) return U256::one();  // t+1 wrapped: target was 2^256-1

    // remainder and quotient as 9-word little-endian values (2^256 needs bit 256)
    std::vector<uint32_t> rem(9, 0), quot(9, 0);
    auto geq = [](const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        for (int i = 8; i >= 0; --i) {
            uint32_t bi = std::size_t(i) < b.size() ? b[i] : 0;
            if (a[std::size_t(i)] != bi) return a[std::size_t(i)] > bi;
        }
        return true;
    };
    auto sub = [](std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        int64_t borrow = 0;
        for (std::size_t i = 0; i < 9; ++i) {
            int64_t bi = i < b.size() ? int64_t(b[i]) : 0;
            int64_t d = int64_t(a[i]) - bi - borrow;
            borrow = d < 0;
            if (d < 0) d += int64_t(1) << 32;
            a[i] = uint32_t(d);
        }
    };
    for (int bit = 256; bit >= 0; --bit) {
        // rem = rem*2 + bit_of_dividend (dividend = 2^256: only bit 256 set)
        uint32_t carry = bit == 256 ? 1 : 0;
        for (std::size_t i = 0; i < 9; ++i) {
            uint32_t next = rem[i] >> 31;
            rem[i] = (rem[i] << 1) | carry;
            carry = next;
        }
        if (geq(rem, divisor)) {
            sub(rem, divisor);
            quot[std::size_t(bit) / 32] |= 1u << (bit % 32);
        }
    }
    REQUIRE(quot[8] == 0);  // fits in 256 bits for every target >= 1
    U256 out;
    for (int i = 0; i < 4; ++i)
        out.limbs()[i] = uint64_t(quot[2 * i]) | (uint64_t(quot[2 * i + 1]) << 32);
    return out;
}

struct TestChain {
    ChainParams params = simnet_params();
    Block genesis;
    ChainState state;
    std::vector<Block> blocks;  // excluding genesis
    Wallet wallet;

    TestChain()
        : genesis(make_genesis(simnet_params(), kDefaultGenesisMessage, 0)),
          state(ChainState::from_genesis(genesis, params)) {
        wallet.create_key("miner", to_bytes("test-miner"));
    }

    Script miner_script() const {
        return make_p2pkh(hash20(ByteSpan(wallet.key("miner")->public_key.bytes)));
    }

    // Proper block via the assembler; caller may mutate before connecting.
    Block next_block(const std::vector<Transaction>& txs = {}) {
        return assemble_block(state, txs, miner_script(),
                              state.tip_time() + params.target_spacing,
                              state.height() + 1000);
    }

    BlockError connect(const Block& b) {
        BlockError err = state.validate_and_connect(b, b.header.time);
        if (err == BlockError::none) blocks.push_back(b);
        return err;
    }

    void mine(unsigned count, const std::vector<Transaction>& txs = {}) {
        for (unsigned i = 0; i < count; ++i) {
            std::vector<Transaction> include = i == 0 ? txs : std::vector<Transaction>{};
            Block b = next_block(include);
            REQUIRE(connect(b) == BlockError::none);
        }
    }
};

// brute-force UTXO replay: no consensus code involved
std::map<OutPoint, Amount> utxo_replay_oracle(const Block& genesis,
                                              const std::vector<Block>& blocks) {
    std::map<OutPoint, Amount> utxo;
    auto apply = [&](const Block& b) {
        for (const auto& tx : b.transactions) {
            for (const auto& in : tx.inputs)
                if (!in.prevout.is_coinbase_marker()) utxo.erase(in.prevout);
            Digest32 id = txid(tx);
            for (uint32_t i = 0; i < tx.outputs.size(); ++i)
                utxo.emplace(OutPoint{id, i}, tx.outputs[i].amount);
        }
    };
    apply(genesis);
    for (const auto& b : blocks) apply(b);
    return utxo;
}

}  // namespace

TEST_CASE("block subsidy halves by integer division") {
    ChainParams mainnet = mainnet_like_params();
    CHECK(block_subsidy(0, mainnet) == 50 * kCoin);
    CHECK(block_subsidy(209'999, mainnet) == 50 * kCoin);
    CHECK(block_subsidy(210'000, mainnet) == 25 * kCoin);
    CHECK(block_subsidy(33 * 210'000ULL, mainnet) == 0);

    // repeated-integer-halving oracle over epochs 0..40
    Amount expected = 50 * kCoin;
    for (uint64_t k = 0; k <= 40; ++k) {
        CHECK(block_subsidy(k * 210'000ULL, mainnet) == expected);
        expected /= 2;
    }
}

TEST_CASE("cumulative supply stays under 21 million coins") {
    ChainParams mainnet = mainnet_like_params();
    CHECK(cumulative_supply(0, mainnet) == 50 * kCoin);

    // closed-form brute force across the 33 halving epochs
    Amount oracle = 0;
    Amount subsidy = 50 * kCoin;
    for (int k = 0; k < 40 && subsidy > 0; ++k) {
        oracle += subsidy * 210'000;
        subsidy /= 2;
    }
    CHECK(oracle == 2'099'999'997'690'000);
    CHECK(asymptotic_supply(mainnet) == oracle);
    CHECK(asymptotic_supply(mainnet) < 21'000'000 * kCoin);

    // per-epoch geometric decrease
    for (uint64_t k = 0; k < 10; ++k) {
        Amount epoch_total = cumulative_supply((k + 1) * 210'000 - 1, mainnet) -
                             (k == 0 ? 0 : cumulative_supply(k * 210'000 - 1, mainnet));
        CHECK(epoch_total == (Amount(50 * kCoin) >> k) * 210'000);
    }

    // monotone non-decreasing
    Amount prev = 0;
    for (uint64_t h = 0; h < 500'000; h += 7'919) {
        Amount s = cumulative_supply(h, mainnet);
        CHECK(s >= prev);
        prev = s;
    }
}

TEST_CASE("compact bits round-trips up to mantissa precision") {
    // exactly representable targets survive unchanged
    Rng rng(31);
    for (int i = 0; i < 500; ++i) {
        uint32_t mantissa = uint32_t(rng.next_below(0xFFFFFF)) + 1;
        unsigned exponent = 3 + unsigned(rng.next_below(30));
        uint32_t bits = (uint32_t(exponent) << 24) | mantissa;
        U256 target = bits_to_target(bits);
        CHECK(bits_to_target(target_to_bits(target)) == target);
    }
    // arbitrary targets lose only sub-mantissa precision
    for (int i = 0; i < 500; ++i) {
        U256 t;
        for (auto& l : t.limbs()) l = rng.next_u64();
        t = t >> unsigned(rng.next_below(200));
        if (t.is_zero()) continue;
        U256 rt = bits_to_target(target_to_bits(t));
        CHECK(rt <= t);
        unsigned len_bytes = (t.bit_length() + 7) / 8;
        U256 max_err = len_bytes > 3 ? (U256::one() << (8 * (len_bytes - 3))) : U256::zero();
        CHECK(t - rt < (max_err.is_zero() ? U256::one() : max_err));
    }
    // the simnet ceiling
    ChainParams p = simnet_params();
    CHECK(target_to_bits(p.max_target()) == p.max_target_bits);
}

TEST_CASE("check_pow accepts nearly everything at the maximal target") {
    ChainParams p = simnet_params();
    Rng rng(32);
    int passed = 0;
    for (int i = 0; i < 200; ++i) {
        BlockHeader h;
        h.bits = p.max_target_bits;
        h.nonce = rng.next_u64();
        h.time = rng.next_u64();
        if (check_pow(h, p)) ++passed;
    }
    CHECK(passed == 200);  // failure odds per header are 2^-24

    // a target above the ceiling is rejected no matter the hash
    BlockHeader too_easy;
    too_easy.bits = 0x21FFFFFF;
    CHECK_FALSE(check_pow(too_easy, p));
}

TEST_CASE("pow comparison is inclusive at the boundary") {
    Digest32 hash = sha256(to_bytes("boundary"));
    U256 value = U256::from_be_bytes(hash);
    CHECK(hash_meets_target(hash, value));                 // hash == target passes
    CHECK(hash_meets_target(hash, value + U256::one()));
    CHECK_FALSE(hash_meets_target(hash, value - U256::one()));
}

TEST_CASE("expected nonce trials at target = max/256 are about 256") {
    ChainParams p = simnet_params();
    U256 target = p.max_target() >> 8;
    uint32_t bits = target_to_bits(target);
    REQUIRE(bits_to_target(bits) == target);

    BlockHeader header;
    header.bits = bits;
    Rng rng(33);
    uint64_t total_attempts = 0;
    for (int run = 0; run < 1000; ++run) {
        header.time = run;  // vary the header per run
        uint64_t start = rng.next_u64() >> 1;
        auto nonce = pow_search(header, target, start, 1 << 16);
        REQUIRE(nonce.has_value());
        total_attempts += *nonce - start + 1;
    }
    double mean = double(total_attempts) / 1000.0;
    CHECK(mean > 256.0 * 0.85);
    CHECK(mean < 256.0 * 1.15);
}

TEST_CASE("retarget follows the clamped proportional rule") {
    ChainParams p = simnet_params();  // spacing 1, interval 32, clamp 4
    const uint64_t expected = 32;
    U256 old_target = bits_to_target(0x1E123456);

    CHECK(retarget(old_target, expected, p) == old_target);

    // halved timespan halves the target (integer-exact for even mantissas)
    U256 halved = retarget(old_target, expected / 2, p);
    CHECK(halved == old_target.div_u64(2));

    // 10x the expected timespan clamps at 4x
    U256 quadrupled = retarget(old_target, expected * 10, p);
    CHECK(quadrupled == old_target.mul_u64(4));

    CHECK_THROWS_AS(retarget(old_target, 0, p), std::invalid_argument);

    // never exceeds the ceiling
    CHECK(retarget(p.max_target(), expected * 4, p) == p.max_target());

    // rational-arithmetic oracle on small targets (exact in __int128)
    Rng rng(34);
    for (int i = 0; i < 300; ++i) {
        uint64_t old_small = rng.next_u64() >> 8;
        if (old_small == 0) continue;
        uint64_t actual = 1 + rng.next_below(expected * 8);
        uint64_t clamped = std::min(std::max(actual, expected / 4), expected * 4);
        unsigned __int128 want = (unsigned __int128)old_small * clamped / expected;
        U256 got = retarget(U256(old_small), actual, p);
        CHECK(got.limbs()[0] == uint64_t(want));
        CHECK(got.limbs()[1] == uint64_t(want >> 64));
    }
}

TEST_CASE("chain work matches the independent long-division oracle") {
    CHECK(chain_work(U256::max_value()) == U256::one());
    CHECK_THROWS_AS(chain_work(U256::zero()), std::invalid_argument);

    Rng rng(35);
    for (int i = 0; i < 1000; ++i) {
        U256 t;
        for (auto& l : t.limbs()) l = rng.next_u64();
        t = t >> unsigned(rng.next_below(250));
        if (t.is_zero()) t = U256::one();
        U256 work = chain_work(t);
        CHECK(work == chain_work_oracle(t));

        // halving the target roughly doubles the work (exact via the oracle)
        if (!(t >> 1).is_zero()) CHECK(chain_work(t >> 1) == chain_work_oracle(t >> 1));
    }

    // monotone: lower target, strictly higher work
    U256 t = U256::max_value() >> 1;
    for (int i = 0; i < 200; ++i) {
        U256 smaller = t >> 1;
        if (smaller.is_zero()) break;
        CHECK(chain_work(smaller) > chain_work(t));
        t = smaller;
    }
}

// ---- contextual validation ----

TEST_CASE("validate_and_connect accepts a clean extension") {
    TestChain chain;
    Block b = chain.next_block();
    CHECK(chain.connect(b) == BlockError::none);
    CHECK(chain.state.height() == 1);
    CHECK(chain.state.utxos().size() == 2);  // genesis + new coinbase
}

TEST_CASE("validate_and_connect rejects each failure class distinctly") {
    TestChain chain;
    chain.mine(12);  // mature one coinbase (maturity 10)
    const ChainParams& params = chain.params;

    auto spendable = chain.wallet.owned_utxos(chain.state);
    REQUIRE(!spendable.empty());

    SUBCASE("bad-pow via wrong bits for the height") {
        Block b = chain.next_block();
        b.header.bits = 0x1D00FFFF;  // not the scheduled target
        CHECK(chain.state.validate_and_connect(b, b.header.time) == BlockError::bad_pow);
    }
    SUBCASE("bad-link via wrong parent") {
        Block b = chain.next_block();
        b.header.prev_hash.bytes[0] ^= 1;
        auto nonce = pow_search(b.header, params.max_target(), 0, 1 << 20);
        b.header.nonce = *nonce;
        CHECK(chain.state.validate_and_connect(b, b.header.time) == BlockError::bad_link);
    }
    SUBCASE("bad-commitment via tampered body") {
        Block b = chain.next_block();
        b.transactions[0].outputs[0].amount -= 1;
        CHECK(chain.state.validate_and_connect(b, b.header.time) ==
              BlockError::bad_commitment);
    }
    SUBCASE("bad-time: earlier than parent or too far in the future") {
        Block early = chain.next_block();
        early.header.time = chain.state.tip_time() - 1;
        auto nonce = pow_search(early.header, params.max_target(), 0, 1 << 20);
        early.header.nonce = *nonce;
        CHECK(chain.state.validate_and_connect(early, chain.state.tip_time() + 1) ==
              BlockError::bad_time);

        Block late = chain.next_block();
        CHECK(chain.state.validate_and_connect(late, late.header.time - 7201) ==
              BlockError::bad_time);
    }

    // a signed payment available for the remaining cases
    Address self = chain.wallet.address("miner");
    Transaction payment =
        chain.wallet.sign_all(chain.state, chain.wallet.build_payment(chain.state, self,
                                                                      10 * kCoin, kCoin / 100));

    SUBCASE("double-spend inside one block") {
        Transaction twin = payment;
        twin.outputs[0].amount -= 1;  // different txid, same inputs
        Block b = chain.next_block({payment, twin});
        // the assembler skips conflicts, so build the bad block by hand
        b.transactions.push_back(twin);
        b.header.tx_commitment = tx_commitment(b.transactions);
        auto nonce = pow_search(b.header, bits_to_target(b.header.bits), 0, 1 << 20);
        b.header.nonce = *nonce;
        CHECK(chain.state.validate_and_connect(b, b.header.time) == BlockError::double_spend);
    }
    SUBCASE("missing-utxo") {
        Transaction ghost = payment;
        ghost.inputs[0].prevout.txid.bytes[5] ^= 0xFF;
        Block b = chain.next_block();
        b.transactions.push_back(ghost);
        b.header.tx_commitment = tx_commitment(b.transactions);
        auto nonce = pow_search(b.header, bits_to_target(b.header.bits), 0, 1 << 20);
        b.header.nonce = *nonce;
        CHECK(chain.state.validate_and_connect(b, b.header.time) == BlockError::missing_utxo);
    }
    SUBCASE("immature-coinbase") {
        // spend the newest coinbase (height 12, matures at 22)
        const Block& tip_block = chain.blocks.back();
        Transaction young;
        young.inputs.push_back(TxInput{OutPoint{txid(tip_block.transactions[0]), 0}, Script{}});
        young.outputs.push_back(TxOutput{kCoin, make_p2pkh(Digest20{})});
        young = chain.wallet.sign_all(chain.state, young);
        Block b = chain.next_block();
        b.transactions.push_back(young);
        b.header.tx_commitment = tx_commitment(b.transactions);
        auto nonce = pow_search(b.header, bits_to_target(b.header.bits), 0, 1 << 20);
        b.header.nonce = *nonce;
        CHECK(chain.state.validate_and_connect(b, b.header.time) ==
              BlockError::immature_coinbase);
    }
    SUBCASE("script-reject") {
        Transaction bad_sig = payment;
        Bytes& sig = bad_sig.inputs[0].script_sig.bytes;
        sig[5] ^= 0x01;
        Block b = chain.next_block();
        b.transactions.push_back(bad_sig);
        b.header.tx_commitment = tx_commitment(b.transactions);
        auto nonce = pow_search(b.header, bits_to_target(b.header.bits), 0, 1 << 20);
        b.header.nonce = *nonce;
        CHECK(chain.state.validate_and_connect(b, b.header.time) == BlockError::script_reject);
    }
    SUBCASE("non-final") {
        Transaction locked = chain.wallet.build_payment(chain.state, self, kCoin, kCoin / 100);
        locked.lock_time = chain.state.tip_time() + 10'000;
        locked = chain.wallet.sign_all(chain.state, locked);
        Block b = chain.next_block();
        b.transactions.push_back(locked);
        b.header.tx_commitment = tx_commitment(b.transactions);
        auto nonce = pow_search(b.header, bits_to_target(b.header.bits), 0, 1 << 20);
        b.header.nonce = *nonce;
        CHECK(chain.state.validate_and_connect(b, b.header.time) == BlockError::non_final);
    }
    SUBCASE("bad-subsidy: one unit over subsidy plus fees") {
        Block b = chain.next_block({payment});
        b.transactions[0].outputs[0].amount += 1;
        b.header.tx_commitment = tx_commitment(b.transactions);
        auto nonce = pow_search(b.header, bits_to_target(b.header.bits), 0, 1 << 20);
        b.header.nonce = *nonce;
        CHECK(chain.state.validate_and_connect(b, b.header.time) == BlockError::bad_subsidy);
    }
    SUBCASE("bad-subsidy: missing or extra coinbase") {
        Block no_cb = chain.next_block();
        no_cb.transactions[0].inputs[0].prevout = spendable[0].outpoint;
        no_cb.header.tx_commitment = tx_commitment(no_cb.transactions);
        auto nonce = pow_search(no_cb.header, bits_to_target(no_cb.header.bits), 0, 1 << 20);
        no_cb.header.nonce = *nonce;
        CHECK(chain.state.validate_and_connect(no_cb, no_cb.header.time) ==
              BlockError::bad_subsidy);
    }
    SUBCASE("value-overflow: outputs exceed inputs") {
        // a validly signed transaction creating coins out of thin air
        const Wallet::OwnedUtxo* mature = nullptr;
        for (const auto& o : spendable)
            if (chain.state.height() + 1 >= o.entry.height + params.coinbase_maturity) {
                mature = &o;
                break;
            }
        REQUIRE(mature != nullptr);
        Transaction greedy;
        greedy.inputs.push_back(TxInput{mature->outpoint, Script{}});
        greedy.outputs.push_back(TxOutput{60 * kCoin, make_p2pkh(Digest20{})});
        greedy = chain.wallet.sign_all(chain.state, greedy);
        Block b = chain.next_block();
        b.transactions.push_back(greedy);
        b.header.tx_commitment = tx_commitment(b.transactions);
        auto nonce = pow_search(b.header, bits_to_target(b.header.bits), 0, 1 << 20);
        b.header.nonce = *nonce;
        CHECK(chain.state.validate_and_connect(b, b.header.time) ==
              BlockError::value_overflow);
    }
}

TEST_CASE("difficulty retargets on schedule as the chain grows") {
    TestChain chain;
    chain.mine(70);  // crosses the boundaries at heights 32 and 64

    const auto& summaries = chain.state.summaries();
    uint32_t genesis_bits = chain.params.max_target_bits;
    for (uint32_t h = 1; h < 32; ++h) CHECK(summaries[h].bits == genesis_bits);

    // blocks land exactly one spacing apart: the window measures 31 of the
    // expected 32 seconds, so the target tightens slightly at each boundary
    U256 w0 = bits_to_target(summaries[31].bits);
    U256 w1 = bits_to_target(summaries[32].bits);
    U256 w2 = bits_to_target(summaries[64].bits);
    CHECK(w1 < w0);
    CHECK(w2 < w1);
    for (uint32_t h = 32; h < 64; ++h) CHECK(summaries[h].bits == summaries[32].bits);

    // the whole chain revalidates from scratch, recomputing the same schedule
    std::vector<Block> blocks;
    blocks.push_back(chain.genesis);
    blocks.insert(blocks.end(), chain.blocks.begin(), chain.blocks.end());
    ReplayResult replay = replay_chain(blocks, chain.params);
    REQUIRE(replay.ok);
    CHECK(*replay.state == chain.state);
}

TEST_CASE("a block of two payments updates the utxo set per the replay oracle") {
    TestChain chain;
    chain.mine(13);

    Address self = chain.wallet.address("miner");
    std::set<OutPoint> used;
    Transaction pay1 = chain.wallet.sign_all(
        chain.state, chain.wallet.build_payment(chain.state, self, 7 * kCoin, kCoin / 100));
    for (const auto& in : pay1.inputs) used.insert(in.prevout);
    Transaction pay2 = chain.wallet.sign_all(
        chain.state,
        chain.wallet.build_payment(chain.state, self, 11 * kCoin, kCoin / 100, &used));

    std::size_t utxos_before = chain.state.utxos().size();
    uint32_t height_before = chain.state.height();
    Block b = chain.next_block({pay1, pay2});
    REQUIRE(chain.connect(b) == BlockError::none);
    REQUIRE(b.transactions.size() == 3);

    CHECK(chain.state.height() == height_before + 1);
    std::size_t created = 1;  // coinbase
    std::size_t spent = pay1.inputs.size() + pay2.inputs.size();
    created += pay1.outputs.size() + pay2.outputs.size();
    CHECK(chain.state.utxos().size() == utxos_before + created - spent);

    // full replay oracle from genesis
    auto oracle = utxo_replay_oracle(chain.genesis, chain.blocks);
    CHECK(oracle.size() == chain.state.utxos().size());
    for (const auto& [op, entry] : chain.state.utxos()) {
        auto it = oracle.find(op);
        REQUIRE(it != oracle.end());
        CHECK(it->second == entry.output.amount);
    }

    // supply safety: what is unspent never exceeds what was ever minted
    CHECK(chain.state.utxos().total_value() <=
          cumulative_supply(chain.state.height(), chain.params));
}

TEST_CASE("connect then disconnect is an exact inverse") {
    TestChain chain;
    chain.mine(12);

    Address self = chain.wallet.address("miner");
    Transaction pay = chain.wallet.sign_all(
        chain.state, chain.wallet.build_payment(chain.state, self, 5 * kCoin, kCoin / 1000));

    ChainState before = chain.state;
    Block b = chain.next_block({pay});
    REQUIRE(chain.state.validate_and_connect(b, b.header.time) == BlockError::none);
    CHECK_FALSE(chain.state == before);
    REQUIRE(chain.state.disconnect_tip());
    CHECK(chain.state == before);
}

TEST_CASE("disconnect at genesis is refused") {
    TestChain chain;
    CHECK_FALSE(chain.state.disconnect_tip());
    chain.mine(5);
    for (int i = 0; i < 5; ++i) CHECK(chain.state.disconnect_tip());
    CHECK_FALSE(chain.state.disconnect_tip());
    CHECK(chain.state.utxos().size() == 1);  // genesis-only utxo set
}

TEST_CASE("fork choice: first-seen tie, higher-work reorg, orphans") {
    ChainParams params = simnet_params();
    Block genesis = make_genesis(params, kDefaultGenesisMessage, 0);
    BlockTree tree(genesis, params);

    Wallet w;
    w.create_key("a", to_bytes("fork-a"));
    w.create_key("b", to_bytes("fork-b"));
    Script script_a = make_p2pkh(hash20(ByteSpan(w.key("a")->public_key.bytes)));
    Script script_b = make_p2pkh(hash20(ByteSpan(w.key("b")->public_key.bytes)));

    // two children of genesis at equal work
    Block child_a = assemble_block(tree.state(), {}, script_a, 1, 1);
    ChainState genesis_state = ChainState::from_genesis(genesis, params);
    Block child_b = assemble_block(genesis_state, {}, script_b, 1, 2);
    REQUIRE(block_hash(child_a.header) != block_hash(child_b.header));

    U256 work_floor = tree.state().cumulative_work();
    auto check_work_monotone = [&] {
        // fork choice never decreases the active tip's cumulative work
        CHECK(tree.state().cumulative_work() >= work_floor);
        work_floor = tree.state().cumulative_work();
    };

    AcceptResult first = tree.accept_block(child_a, 10);
    CHECK(first.status == AcceptResult::Status::connected);
    check_work_monotone();
    AcceptResult second = tree.accept_block(child_b, 10);
    CHECK(second.status == AcceptResult::Status::side_branch);
    check_work_monotone();
    CHECK(tree.state().tip_hash() == block_hash(child_a.header));  // first seen wins

    // duplicate submission is flagged
    CHECK(tree.accept_block(child_a, 10).status == AcceptResult::Status::duplicate);

    // extend the losing branch: it now has more work, so the tree reorgs
    ChainState b_state = ChainState::from_genesis(genesis, params);
    REQUIRE(b_state.validate_and_connect(child_b, 10) == BlockError::none);
    Block grandchild = assemble_block(b_state, {}, script_b, 2, 3);
    AcceptResult reorg = tree.accept_block(grandchild, 10);
    CHECK(reorg.status == AcceptResult::Status::reorged);
    check_work_monotone();
    CHECK(tree.state().tip_hash() == block_hash(grandchild.header));
    CHECK(tree.state().height() == 2);
    REQUIRE(reorg.disconnected.size() == 1);
    CHECK(reorg.disconnected[0] == block_hash(child_a.header));
    REQUIRE(reorg.connected.size() == 2);
    CHECK(reorg.connected[0] == block_hash(child_b.header));
    CHECK(reorg.connected[1] == block_hash(grandchild.header));

    // the reorged-to state equals a fresh replay of the new chain
    REQUIRE(b_state.validate_and_connect(grandchild, 10) == BlockError::none);
    CHECK(tree.state() == b_state);

    // an orphan waits for its parent
    Block far_child = assemble_block(b_state, {}, script_b, 3, 4);
    ChainState b_state2 = b_state;
    REQUIRE(b_state2.validate_and_connect(far_child, 10) == BlockError::none);
    Block far_grandchild = assemble_block(b_state2, {}, script_b, 4, 5);

    AcceptResult orphaned = tree.accept_block(far_grandchild, 10);
    CHECK(orphaned.status == AcceptResult::Status::orphaned);
    CHECK(tree.orphan_pool_size() == 1);
    AcceptResult parent_arrives = tree.accept_block(far_child, 10);
    CHECK(parent_arrives.status == AcceptResult::Status::connected);
    CHECK(tree.orphan_pool_size() == 0);
    CHECK(tree.state().tip_hash() == block_hash(far_grandchild.header));
}

TEST_CASE("the orphan pool is bounded at 1000 blocks") {
    ChainParams params = simnet_params();
    Block genesis = make_genesis(params, kDefaultGenesisMessage, 0);
    BlockTree tree(genesis, params);

    Rng rng(55);
    Transaction coinbase;
    Bytes tag;
    append_u64(tag, 1);
    coinbase.inputs.push_back(TxInput{OutPoint::coinbase_marker(), Script{tag}});
    coinbase.outputs.push_back(TxOutput{50 * kCoin, make_p2pkh(Digest20{})});

    for (int i = 0; i < 1050; ++i) {
        Block orphan;
        orphan.header.bits = params.max_target_bits;
        orphan.header.time = 5;
        for (auto& b : orphan.header.prev_hash.bytes) b = uint8_t(rng.next_u64());
        orphan.transactions.push_back(coinbase);
        orphan.transactions[0].inputs[0].script_sig.bytes[0] = uint8_t(i);
        orphan.header.tx_commitment = tx_commitment(orphan.transactions);
        orphan.header.nonce =
            *pow_search(orphan.header, params.max_target(), 0, 1 << 20);
        AcceptResult res = tree.accept_block(orphan, 10);
        CHECK(res.status == AcceptResult::Status::orphaned);
        CHECK(tree.orphan_pool_size() <= kMaxOrphans);
    }
    CHECK(tree.orphan_pool_size() == kMaxOrphans);
}

TEST_CASE("an invalid better-work branch is rejected without state change") {
    ChainParams params = simnet_params();
    Block genesis = make_genesis(params, kDefaultGenesisMessage, 0);
    BlockTree tree(genesis, params);

    Wallet w;
    w.create_key("m", to_bytes("rollback-miner"));
    Script script = make_p2pkh(hash20(ByteSpan(w.key("m")->public_key.bytes)));

    Block honest = assemble_block(tree.state(), {}, script, 1, 1);
    REQUIRE(tree.accept_block(honest, 10).status == AcceptResult::Status::connected);

    // competing branch of two blocks whose second block steals subsidy
    ChainState side = ChainState::from_genesis(genesis, params);
    Block side1 = assemble_block(side, {}, script, 1, 2);
    REQUIRE(side.validate_and_connect(side1, 10) == BlockError::none);
    Block side2 = assemble_block(side, {}, script, 2, 3);
    side2.transactions[0].outputs[0].amount += 1;  // bad subsidy
    side2.header.tx_commitment = tx_commitment(side2.transactions);
    side2.header.nonce = *pow_search(side2.header, bits_to_target(side2.header.bits), 0, 1 << 20);

    ChainState before = tree.state();
    CHECK(tree.accept_block(side1, 10).status == AcceptResult::Status::side_branch);
    AcceptResult res = tree.accept_block(side2, 10);
    CHECK(res.status == AcceptResult::Status::rejected);
    CHECK(res.error == BlockError::bad_subsidy);
    CHECK(tree.state() == before);  // untouched after rollback
}

TEST_CASE("replay validates whole chains and pins mutations with an index") {
    TestChain chain;
    chain.mine(6);

    std::vector<Block> blocks;
    blocks.push_back(chain.genesis);
    blocks.insert(blocks.end(), chain.blocks.begin(), chain.blocks.end());

    std::vector<Digest32> expected;
    for (const auto& b : blocks) expected.push_back(block_hash(b.header));

    ReplayResult ok = replay_chain(blocks, chain.params, expected);
    REQUIRE(ok.ok);
    CHECK(*ok.state == chain.state);

    // nonce mutation in block 3: caught exactly there thanks to the index
    std::vector<Block> mutated = blocks;
    mutated[3].header.nonce ^= 1;
    ReplayResult bad = replay_chain(mutated, chain.params, expected);
    CHECK_FALSE(bad.ok);
    CHECK(bad.fail_height == 3);
}
