// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exits nonzero if any criterion fails.

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "minichain/consensus/blocktree.h"
#include "minichain/consensus/miner.h"
#include "minichain/consensus/pow.h"
#include "minichain/consensus/replay.h"
#include "minichain/consensus/subsidy.h"
#include "minichain/core/genesis.h"
#include "minichain/core/serialize.h"
#include "minichain/crypto/sha256.h"
#include "minichain/script/interpreter.h"
#include "minichain/sim/attacks.h"
#include "minichain/storage/chainstore.h"
#include "minichain/util/rng.h"
#include "minichain/wallet/channel.h"

using namespace minichain;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int number;
    std::string name;
    std::function<void(std::ostringstream&)> run;  // throws on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------- helpers

struct MiniChain {
    ChainParams params = simnet_params();
    Block genesis = make_genesis(simnet_params(), kDefaultGenesisMessage, 0);
    ChainState state = ChainState::from_genesis(genesis, params);
    std::vector<Block> blocks;  // genesis excluded
    Wallet wallet;

    MiniChain() { wallet.create_key("m", to_bytes("acceptance-miner")); }

    Script miner_script() {
        return make_p2pkh(hash20(ByteSpan(wallet.key("m")->public_key.bytes)));
    }

    Block mine_one(const std::vector<Transaction>& txs, uint64_t extra) {
        Block b = assemble_block(state, txs, miner_script(),
                                 state.tip_time() + params.target_spacing, extra);
        BlockError err = state.validate_and_connect(b, b.header.time);
        require(err == BlockError::none,
                "setup block rejected: " + std::string(to_string(err)));
        blocks.push_back(b);
        return b;
    }
};

// ---------------------------------------------------------------- criteria

void criterion_supply_cap(std::ostringstream& detail) {
    auto start = std::chrono::steady_clock::now();
    ChainParams mainnet = mainnet_like_params();

    // independent oracle: repeated halving across epochs
    Amount oracle = 0;
    Amount per_block = 50 * kCoin;
    int epochs = 0;
    while (per_block > 0) {
        oracle += per_block * 210000;
        per_block /= 2;
        ++epochs;
    }
    require(epochs == 33, "expected 33 non-zero halving epochs");

    Amount computed = asymptotic_supply(mainnet);
    require(computed == oracle, "asymptotic supply mismatch vs oracle");
    require(computed == 2099999997690000LL, "asymptotic supply != 2,099,999,997,690,000");
    require(computed < Amount(21000000) * kCoin, "supply reaches the 21M cap");

    // the running schedule is monotone and ends below the cap
    Amount prev = 0;
    for (uint64_t h = 0; h <= 33 * 210000ULL; h += 210000 / 2) {
        Amount s = cumulative_supply(h, mainnet);
        require(s >= prev && s <= computed, "cumulative supply not monotone/bounded");
        prev = s;
    }

    double elapsed = seconds_since(start);
    require(elapsed < 1.0, "supply computation exceeded 1 s");
    detail << "supply = 2099999997690000 base units < 2.1e15, oracle exact, "
           << std::setprecision(3) << elapsed << " s";
}

void criterion_halving(std::ostringstream& detail) {
    ChainParams mainnet = mainnet_like_params();
    Amount oracle = 50 * kCoin;
    for (uint64_t k = 0; k <= 40; ++k) {
        require(block_subsidy(k * 210000ULL, mainnet) == oracle,
                "subsidy mismatch at epoch " + std::to_string(k));
        if (k > 0) {
            Amount prev_epoch = k - 1 < 63 ? ((50 * kCoin) >> (k - 1)) : 0;
            require(block_subsidy(k * 210000ULL - 1, mainnet) == prev_epoch,
                    "subsidy mismatch just before epoch " + std::to_string(k));
        }
        oracle /= 2;
    }
    detail << "subsidy(k*210000) == floor(50e8 / 2^k) for k = 0..40, exact";
}

void criterion_retarget(std::ostringstream& detail) {
    auto start = std::chrono::steady_clock::now();

    // pooled across 10 seeds: mean interval after the second retarget
    double total_ms = 0;
    uint64_t samples = 0;
    for (uint64_t seed = 100; seed < 110; ++seed) {
        ScenarioConfig cfg;
        cfg.seed = seed;
        cfg.node_count = 1;
        cfg.hash_rate = 16.0;
        cfg.duration_ms = 400000;
        cfg.mine_until_ms = 400000;

        Simulator sim(cfg);
        sim.after_event = [](Simulator& s) {
            if (s.tree(0).state().height() >= 128) s.stop();
        };
        SimReport report = sim.run();
        require(report.retargets.size() >= 2, "fewer than two retargets");
        std::map<uint32_t, uint64_t> at;
        for (const auto& m : report.mined) at[m.height] = m.time_ms;
        require(at.count(128) == 1, "run ended before 128 blocks");
        for (uint32_t h = 66; h <= 128 && at.count(h) && at.count(h - 1); ++h) {
            total_ms += double(at[h] - at[h - 1]);
            ++samples;
        }
    }
    double mean_s = total_ms / double(samples) / 1000.0;
    require(mean_s > 0.8 && mean_s < 1.2,
            "mean interblock " + std::to_string(mean_s) + " s outside 1 s +/- 20%");

    // doubling the hash rate mid-run: difficulty settles near 2x
    double ratio_sum = 0;
    for (uint64_t seed = 200; seed < 210; ++seed) {
        ScenarioConfig cfg;
        cfg.seed = seed;
        cfg.node_count = 1;
        cfg.hash_rate = 16.0;
        cfg.duration_ms = 260000;
        cfg.mine_until_ms = 260000;
        cfg.rate_change_time_ms = 130000;  // converged well before this
        cfg.rate_change_factor = 2.0;

        SimReport report = Simulator(cfg).run();
        std::map<uint32_t, uint64_t> at;
        for (const auto& m : report.mined) at[m.height] = m.time_ms;

        // first two retarget boundaries whose blocks came after the change
        const RetargetInfo* first_after = nullptr;
        const RetargetInfo* second_after = nullptr;
        for (const auto& r : report.retargets) {
            if (!at.count(r.height) || at[r.height] < cfg.rate_change_time_ms) continue;
            if (!first_after) {
                first_after = &r;
            } else {
                second_after = &r;
                break;
            }
        }
        require(first_after && second_after, "not enough post-change retargets");
        double t_pre = bits_to_target(first_after->old_bits).to_double();
        double t_post = bits_to_target(second_after->new_bits).to_double();
        ratio_sum += t_pre / t_post;
    }
    double mean_ratio = ratio_sum / 10.0;
    require(mean_ratio > 1.5 && mean_ratio < 2.5,
            "post-doubling difficulty ratio " + std::to_string(mean_ratio) +
                " outside [1.5, 2.5]");

    double elapsed = seconds_since(start);
    require(elapsed < 30.0, "retarget criterion exceeded 30 s");
    detail << "mean interval " << std::setprecision(3) << mean_s << " s (" << samples
           << " samples), difficulty ratio " << mean_ratio << ", " << std::setprecision(2)
           << elapsed << " s, 10 seeds each";
}

void criterion_tamper_evidence(std::ostringstream& detail) {
    // 20-block chain with real payments
    MiniChain chain;
    Address self = encode_address(
        kVersionP2PKH, hash20(ByteSpan(chain.wallet.key("m")->public_key.bytes)));
    for (unsigned h = 1; h <= 20; ++h) {
        std::vector<Transaction> txs;
        if (h > 12) {  // coinbases have matured by then
            Transaction pay = chain.wallet.build_payment(chain.state, self,
                                                         Amount(1 + h % 5) * kCoin, kCoin / 100);
            txs.push_back(chain.wallet.sign_all(chain.state, pay));
        }
        chain.mine_one(txs, h);
    }

    std::vector<Block> blocks;
    blocks.push_back(chain.genesis);
    blocks.insert(blocks.end(), chain.blocks.begin(), chain.blocks.end());
    std::vector<Digest32> index;
    for (const auto& b : blocks) index.push_back(block_hash(b.header));
    require(replay_chain(blocks, chain.params, index).ok, "clean chain must replay");

    std::vector<Bytes> serialized;
    for (const auto& b : blocks) serialized.push_back(serialize_block(b));

    Rng rng(404);
    unsigned detected = 0;
    constexpr unsigned kMutations = 500;
    for (unsigned trial = 0; trial < kMutations; ++trial) {
        std::size_t victim = 1 + rng.next_below(blocks.size() - 1);
        Bytes raw = serialized[victim];
        raw[rng.next_below(raw.size())] ^= uint8_t(1 + rng.next_below(255));

        std::vector<Block> mutated = blocks;
        bool failed_at_or_before = false;
        try {
            mutated[victim] = deserialize_block(raw);
            ReplayResult res = replay_chain(mutated, chain.params, index);
            failed_at_or_before = !res.ok && res.fail_height <= victim;
        } catch (const DeserializeError&) {
            failed_at_or_before = true;  // the record no longer parses at all
        }
        if (failed_at_or_before) ++detected;
    }
    require(detected == kMutations,
            "detected " + std::to_string(detected) + "/" + std::to_string(kMutations));
    detail << detected << "/" << kMutations
           << " single-byte mutations caught at or before the mutated height";
}

void criterion_double_spend(std::ostringstream& detail) {
    auto start = std::chrono::steady_clock::now();
    constexpr unsigned kSeeds = 200;
    const std::vector<unsigned> zs{0, 1, 2, 3};

    std::vector<std::vector<DoubleSpendReport>> results(zs.size());
    for (auto& v : results) v.resize(kSeeds);

    std::atomic<unsigned> next{0};
    auto worker = [&] {
        for (unsigned idx = next.fetch_add(1); idx < kSeeds * zs.size();
             idx = next.fetch_add(1)) {
            unsigned zi = idx / kSeeds;
            unsigned seed = idx % kSeeds;
            ScenarioConfig cfg;
            cfg.seed = 7000 + seed;
            cfg.node_count = 4;
            cfg.latency_ms = 50;
            cfg.hash_rate = 1.0;  // total network rate
            cfg.duration_ms = 90000;
            cfg.adversary.kind = AdversaryConfig::Kind::double_spend;
            cfg.adversary.attacker_fraction = 0.10;
            cfg.adversary.confirmations_z = zs[zi];
            results[zi][seed] = run_double_spend(cfg);
        }
    };
    unsigned n_workers = std::max(2u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::vector<unsigned> successes(zs.size(), 0);
    for (std::size_t zi = 0; zi < zs.size(); ++zi) {
        for (const auto& r : results[zi]) {
            require(r.exactly_one_confirmed,
                    "a run did not confirm exactly one of the conflicting txs (z=" +
                        std::to_string(zs[zi]) + ")");
            require(r.active_chain_clean,
                    "full-history scan found a double spend on an active chain");
            if (r.success) ++successes[zi];
        }
    }
    for (std::size_t zi = 1; zi < zs.size(); ++zi)
        require(successes[zi] <= successes[zi - 1],
                "success rate rose from z=" + std::to_string(zs[zi - 1]) + " to z=" +
                    std::to_string(zs[zi]));
    require(successes[0] > successes[3],
            "unconfirmed acceptance must be strictly riskier than z=3");

    double elapsed = seconds_since(start);
    require(elapsed < 60.0, "double-spend criterion exceeded 60 s");
    detail << "successes at z=0..3: " << successes[0] << "/" << successes[1] << "/"
           << successes[2] << "/" << successes[3] << " of " << kSeeds
           << " seeds, monotone non-increasing, " << std::setprecision(2) << elapsed << " s";
}

// brute-force in-order matcher, independent of the interpreter
bool assignment_exists(const std::vector<unsigned>& consumed, unsigned n, std::size_t pos,
                       unsigned next_key) {
    if (pos == consumed.size()) return true;
    for (unsigned k = next_key; k < n; ++k)
        if (consumed[pos] == k && assignment_exists(consumed, n, pos + 1, k + 1)) return true;
    return false;
}

void criterion_multisig(std::ostringstream& detail) {
    Transaction tx;
    tx.inputs.push_back(TxInput{OutPoint{Digest32{}, 7}, Script{}});
    tx.outputs.push_back(TxOutput{kCoin, Script{}});
    Digest32 digest = sighash(tx, 0);

    unsigned cases = 0;
    for (unsigned n = 1; n <= 3; ++n) {
        std::vector<PublicKey> pubs;
        std::vector<Signature> sigs;
        for (unsigned i = 0; i < n; ++i) {
            KeyPair kp = keypair_generate(
                to_bytes("acc-ms-" + std::to_string(n) + "-" + std::to_string(i)));
            pubs.push_back(kp.public_key);
            sigs.push_back(sign(kp.secret_key, digest));
        }
        for (unsigned m = 1; m <= n; ++m) {
            Script lock = make_multisig(m, pubs);
            for (unsigned subset = 0; subset < (1u << n); ++subset) {
                std::vector<unsigned> members;
                for (unsigned i = 0; i < n; ++i)
                    if (subset & (1u << i)) members.push_back(i);
                std::vector<unsigned> perm = members;
                do {
                    Script unlock;
                    for (unsigned i : perm) unlock.push_data(sigs[i].bytes);
                    bool expected = false;
                    if (perm.size() >= m) {
                        std::vector<unsigned> consumed(perm.end() - m, perm.end());
                        expected = assignment_exists(consumed, n, 0, 0);
                    }
                    EvalResult got = eval(unlock, lock, {tx, 0});
                    require(got.accepted == expected,
                            "multisig mismatch vs oracle at n=" + std::to_string(n) +
                                " m=" + std::to_string(m));
                    ++cases;
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
        }
    }
    detail << cases << " presentations (all subsets x permutations, N <= 3) match the "
           << "brute-force matcher";
}

void criterion_p2sh(std::ostringstream& detail) {
    Transaction tx;
    tx.inputs.push_back(TxInput{OutPoint{Digest32{}, 9}, Script{}});
    tx.outputs.push_back(TxOutput{kCoin, Script{}});

    Script true_redeem;
    true_redeem.push_small_int(1);
    Script false_redeem;
    false_redeem.push_small_int(0);
    Digest20 true_hash = hash20(true_redeem.bytes);
    Digest20 false_hash = hash20(false_redeem.bytes);

    auto spend = [&](const Script& redeem, const Digest20& committed) {
        Script unlock;
        unlock.push_data(redeem.bytes);
        return eval(unlock, make_p2sh(committed), {tx, 0});
    };

    require(spend(true_redeem, true_hash).accepted, "match x true must be accepted");
    EvalResult mf = spend(false_redeem, false_hash);
    require(!mf.accepted && mf.failure_reason == ScriptFailure::false_top,
            "match x false must fail false-top");
    EvalResult mt = spend(true_redeem, false_hash);
    require(!mt.accepted && mt.failure_reason == ScriptFailure::redeem_mismatch,
            "mismatch x true must fail redeem-mismatch");
    EvalResult mm = spend(false_redeem, true_hash);
    require(!mm.accepted && mm.failure_reason == ScriptFailure::redeem_mismatch,
            "mismatch x false must fail redeem-mismatch");

    // every P2SH address: exactly 34 characters, prefix '3'
    Rng rng(777);
    for (int i = 0; i < 2000; ++i) {
        Script redeem;
        Bytes body(1 + rng.next_below(200));
        for (auto& b : body) b = uint8_t(rng.next_u64());
        redeem.push_data(body);
        Address addr = p2sh_address(redeem);
        require(addr.text.size() == 34, "p2sh address not 34 chars");
        require(addr.text[0] == '3', "p2sh address prefix not '3'");
    }
    detail << "4-way matrix exact (only match x true accepted); 2000 addresses all "
           << "34 chars with prefix '3'";
}

void criterion_locktime_channels(std::ostringstream& detail) {
    // locked transactions: rejected strictly below T, accepted from T on
    MiniChain chain;
    for (unsigned h = 1; h <= 12; ++h) chain.mine_one({}, h);
    Address self = encode_address(
        kVersionP2PKH, hash20(ByteSpan(chain.wallet.key("m")->public_key.bytes)));

    const uint64_t lock_t = chain.state.tip_time() + 6;
    Transaction locked = chain.wallet.build_payment(chain.state, self, kCoin, kCoin / 100);
    locked.lock_time = lock_t;
    locked = chain.wallet.sign_all(chain.state, locked);

    for (uint64_t t = chain.state.tip_time() + 1; t < lock_t; ++t) {
        Block b = assemble_block(chain.state, {}, chain.miner_script(), t, 999 + t);
        b.transactions.push_back(locked);
        b.header.tx_commitment = tx_commitment(b.transactions);
        b.header.nonce = *pow_search(b.header, bits_to_target(b.header.bits), 0, 1 << 22);
        ChainState probe = chain.state;
        require(probe.validate_and_connect(b, t) == BlockError::non_final,
                "locked tx accepted before T");
    }
    {
        Block b = assemble_block(chain.state, {locked}, chain.miner_script(), lock_t, 4242);
        require(b.transactions.size() == 2, "assembler dropped a final tx at T");
        require(chain.state.validate_and_connect(b, lock_t) == BlockError::none,
                "locked tx rejected at T");
        chain.blocks.push_back(b);
    }

    // channel lifecycle: open, five payments, close; conservation at every step
    KeyPair payee = keypair_generate(to_bytes("acc-payee"));
    Wallet payee_wallet;
    payee_wallet.create_key("p", to_bytes("acc-payee"));

    const Amount capacity = 30 * kCoin;
    const Amount fee = kCoin / 10;
    const uint64_t refund_t = chain.state.tip_time() + 500;
    Channel ch =
        Channel::open(chain.wallet, "m", payee, chain.state, capacity, fee, refund_t);
    chain.mine_one({ch.funding_tx()}, 5001);
    require(chain.state.utxos().find(ch.funding_outpoint()) != nullptr,
            "funding did not confirm");
    ch.mark_funding_confirmed();

    Amount paid = 0;
    for (int i = 1; i <= 5; ++i) {
        ch.pay(2 * kCoin);
        paid += 2 * kCoin;
        require(ch.payee_amount() == paid, "payee amount drifted");
        require(ch.funder_amount() + ch.payee_amount() + ch.fee() == capacity,
                "capacity not conserved after payment " + std::to_string(i));
        require(ch.commitment_index() == uint64_t(i), "commitment index drifted");
    }

    Transaction settle = ch.close(payee);
    chain.mine_one({settle}, 5002);
    require(payee_wallet.balance(chain.state) == paid, "payee did not realize the split");

    // refund now impossible: the funding output is spent
    {
        Block b = assemble_block(chain.state, {}, chain.miner_script(),
                                 std::max(chain.state.tip_time() + 1, refund_t), 5003);
        b.transactions.push_back(ch.refund());
        b.header.tx_commitment = tx_commitment(b.transactions);
        b.header.nonce = *pow_search(b.header, bits_to_target(b.header.bits), 0, 1 << 22);
        BlockError err = chain.state.validate_and_connect(b, b.header.time);
        require(err == BlockError::missing_utxo, "refund after close must be missing-utxo");
    }

    // the mirror branch: refund confirms when no commitment ever did
    MiniChain alt;
    for (unsigned h = 1; h <= 12; ++h) alt.mine_one({}, h);
    KeyPair payee2 = keypair_generate(to_bytes("acc-payee-2"));
    const uint64_t refund2_t = alt.state.tip_time() + 5;
    Channel ch2 = Channel::open(alt.wallet, "m", payee2, alt.state, capacity, fee, refund2_t);
    alt.mine_one({ch2.funding_tx()}, 6001);
    ch2.mark_funding_confirmed();
    while (alt.state.tip_time() + alt.params.target_spacing < refund2_t) alt.mine_one({}, 6002);
    Block b = assemble_block(alt.state, {ch2.refund()}, alt.miner_script(),
                             alt.state.tip_time() + alt.params.target_spacing, 6003);
    require(b.transactions.size() == 2, "refund not includable at T");
    require(alt.state.validate_and_connect(b, b.header.time) == BlockError::none,
            "refund rejected with no competing commitment");

    detail << "locked tx rejected at 5 heights below T and accepted at T; 5 payments "
           << "conserve capacity; refund confirmable iff no commitment confirmed";
}

void criterion_fork_choice(std::ostringstream& detail) {
    // connect/disconnect inverse across 1000 random blocks
    MiniChain chain;
    Address self = encode_address(
        kVersionP2PKH, hash20(ByteSpan(chain.wallet.key("m")->public_key.bytes)));
    Rng rng(909);
    unsigned payments = 0;
    for (unsigned h = 1; h <= 1000; ++h) {
        std::vector<Transaction> txs;
        if (h > 12 && rng.bernoulli(0.33)) {
            Amount amount = Amount(1 + rng.next_below(20)) * kCoin;
            Transaction pay =
                chain.wallet.build_payment(chain.state, self, amount, kCoin / 100);
            txs.push_back(chain.wallet.sign_all(chain.state, pay));
            ++payments;
        }
        Block b = assemble_block(chain.state, txs, chain.miner_script(),
                                 chain.state.tip_time() + 1, h);

        ChainState before = chain.state;
        require(chain.state.validate_and_connect(b, b.header.time) == BlockError::none,
                "block rejected at height " + std::to_string(h));
        ChainState connected = chain.state;
        require(chain.state.disconnect_tip(), "disconnect refused");
        require(chain.state == before, "disconnect is not the exact inverse");
        require(chain.state.validate_and_connect(b, b.header.time) == BlockError::none,
                "reconnect failed");
        require(chain.state == connected, "reconnect drifted");
        chain.blocks.push_back(b);
    }

    // fork choice on a fresh tree: ties keep first-seen, work wins, utxo matches replay
    ChainParams params = simnet_params();
    Block genesis = make_genesis(params, kDefaultGenesisMessage, 0);
    BlockTree tree(genesis, params);
    Wallet wa, wb;
    wa.create_key("a", to_bytes("fork-acc-a"));
    wb.create_key("b", to_bytes("fork-acc-b"));
    Script sa = make_p2pkh(hash20(ByteSpan(wa.key("a")->public_key.bytes)));
    Script sb = make_p2pkh(hash20(ByteSpan(wb.key("b")->public_key.bytes)));

    ChainState line_a = ChainState::from_genesis(genesis, params);
    ChainState line_b = ChainState::from_genesis(genesis, params);
    Block a1 = assemble_block(line_a, {}, sa, 1, 11);
    Block b1 = assemble_block(line_b, {}, sb, 1, 22);
    require(line_a.validate_and_connect(a1, 10) == BlockError::none, "a1");
    require(line_b.validate_and_connect(b1, 10) == BlockError::none, "b1");

    require(tree.accept_block(a1, 10).status == AcceptResult::Status::connected, "a1 in");
    require(tree.accept_block(b1, 10).status == AcceptResult::Status::side_branch,
            "equal-work tie must stay a side branch");
    require(tree.state().tip_hash() == block_hash(a1.header), "tie did not keep first-seen");

    Block b2 = assemble_block(line_b, {}, sb, 2, 33);
    require(line_b.validate_and_connect(b2, 10) == BlockError::none, "b2");
    AcceptResult reorg = tree.accept_block(b2, 10);
    require(reorg.status == AcceptResult::Status::reorged, "higher-work branch must reorg");
    require(tree.state().tip_hash() == block_hash(b2.header), "tip not on the b-branch");

    // post-reorg utxo set equals the genesis-replay oracle of the b-branch
    ReplayResult replayed = replay_chain({genesis, b1, b2}, params);
    require(replayed.ok, "b-branch must replay from genesis");
    require(replayed.state->utxos() == tree.state().utxos(),
            "post-reorg utxo set diverges from the replay oracle");

    detail << "1000 connect/disconnect inverses (" << payments
           << " with payments); tie kept first-seen; higher-work reorg matches replay";
}

void criterion_determinism_convergence(std::ostringstream& detail) {
    unsigned converged_runs = 0;
    for (uint64_t seed : {501ull, 502ull, 503ull}) {
        ScenarioConfig cfg;
        cfg.seed = seed;
        cfg.node_count = 4;
        cfg.latency_ms = 100;
        cfg.hash_rate = 0.25;
        cfg.duration_ms = 60000;
        cfg.payment_count = 5;
        cfg.payment_interval_ms = 4000;

        SimReport first = Simulator(cfg).run();
        SimReport second = Simulator(cfg).run();
        require(first.to_text() == second.to_text(),
                "identical configs produced different reports (seed " +
                    std::to_string(seed) + ")");
        require(first.to_json_text() == second.to_json_text(),
                "json reports differ (seed " + std::to_string(seed) + ")");

        for (const auto& node : first.nodes) {
            require(node.tip == first.nodes[0].tip,
                    "nodes ended on different tips (seed " + std::to_string(seed) + ")");
            require(node.utxo_digest == first.nodes[0].utxo_digest,
                    "utxo sets differ across nodes (seed " + std::to_string(seed) + ")");
        }
        require(first.nodes[0].height > 10, "run mined too few blocks to be meaningful");
        ++converged_runs;
    }
    detail << converged_runs
           << "/3 seeds: byte-identical reports and all 4 nodes on one tip with "
           << "identical utxo sets";
}

void criterion_crash_safety(std::ostringstream& detail) {
    fs::path dir = fs::temp_directory_path() /
                   ("minichain-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);

    MiniChain chain;
    for (unsigned h = 1; h <= 6; ++h) chain.mine_one({}, h);
    std::vector<Block> blocks;
    blocks.push_back(chain.genesis);
    blocks.insert(blocks.end(), chain.blocks.begin(), chain.blocks.end());

    fs::path file_path = dir / "blocks.dat";
    uint64_t final_start = 0;
    uint64_t full_size = 0;
    {
        BlockFile file(file_path, chain.params.network_magic);
        for (const auto& b : blocks) {
            BlockLocation loc = file.append(serialize_block(b));
            final_start = loc.offset;
        }
        file.flush();
        full_size = file.file_size();
    }
    Bytes pristine(full_size);
    {
        std::FILE* f = std::fopen(file_path.string().c_str(), "rb");
        require(std::fread(pristine.data(), 1, full_size, f) == full_size, "read back");
        std::fclose(f);
    }

    unsigned checked = 0;
    for (uint64_t cut = final_start; cut < full_size; ++cut) {
        fs::resize_file(file_path, cut);
        BlockFile reopened(file_path, chain.params.network_magic);
        require(reopened.locations().size() == blocks.size() - 1,
                "truncation at " + std::to_string(cut) + " kept the torn record");
        require(reopened.file_size() == final_start, "torn tail not dropped");

        // every surviving record parses and re-validates; the index rebuild matches
        std::vector<Block> recovered;
        std::vector<Digest32> rebuilt_index;
        for (const auto& loc : reopened.locations()) {
            recovered.push_back(deserialize_block(reopened.read(loc)));
            rebuilt_index.push_back(block_hash(recovered.back().header));
        }
        ReplayResult res = replay_chain(recovered, chain.params, rebuilt_index);
        require(res.ok, "recovered prefix fails validation");
        for (std::size_t h = 0; h < recovered.size(); ++h)
            require(rebuilt_index[h] == block_hash(blocks[h].header),
                    "rebuilt index diverges at height " + std::to_string(h));
        ++checked;

        // restore the full file for the next boundary
        {
            std::FILE* f = std::fopen(file_path.string().c_str(), "wb");
            std::fwrite(pristine.data(), 1, pristine.size(), f);
            std::fclose(f);
        }
    }
    fs::remove_all(dir);
    require(checked > 100, "record too small to be a meaningful sweep");
    detail << checked << " byte-boundary truncations of the final record all recovered "
           << "to exactly the complete prefix; index rebuild matches";
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "supply cap", criterion_supply_cap},
        {2, "halving and geometric decrease", criterion_halving},
        {3, "retarget behavior", criterion_retarget},
        {4, "tamper evidence", criterion_tamper_evidence},
        {5, "double-spend safety", criterion_double_spend},
        {6, "multisig truth table", criterion_multisig},
        {7, "p2sh", criterion_p2sh},
        {8, "locktime and channels", criterion_locktime_channels},
        {9, "fork choice and reorg", criterion_fork_choice},
        {10, "determinism and convergence", criterion_determinism_convergence},
        {11, "crash safety", criterion_crash_safety},
    };

    auto suite_start = std::chrono::steady_clock::now();
    int failures = 0;
    for (auto& c : criteria) {
        std::ostringstream detail;
        try {
            c.run(detail);
            std::cout << "[PASS] criterion " << c.number << " (" << c.name << "): "
                      << detail.str() << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "[FAIL] criterion " << c.number << " (" << c.name
                      << "): " << e.what() << "\n";
        }
        std::cout.flush();
    }
    std::cout << (failures == 0 ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES")
              << " (" << criteria.size() - unsigned(failures) << "/" << criteria.size()
              << ", " << std::fixed << std::setprecision(1) << seconds_since(suite_start)
              << " s)\n";
    return failures == 0 ? 0 : 1;
}
