// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/cli/commands.h"

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "minichain/consensus/miner.h"
#include "minichain/consensus/replay.h"
#include "minichain/consensus/subsidy.h"
#include "minichain/core/genesis.h"
#include "minichain/core/serialize.h"
#include "minichain/crypto/sha256.h"
#include "minichain/script/interpreter.h"
#include "minichain/sim/attacks.h"
#include "minichain/storage/chainstore.h"
#include "minichain/wallet/channel.h"

namespace minichain::cli {

namespace {

using nlohmann::ordered_json;

struct CliError : std::runtime_error {
    CliError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

struct Ctx {
    std::filesystem::path datadir;
    uint64_t seed = 1;
    bool json = false;
    ChainParams params = simnet_params();
};

Amount parse_amount(const std::string& text) {
    std::size_t dot = text.find('.');
    std::string whole = dot == std::string::npos ? text : text.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw CliError(exit_user_error, "bad amount: " + text);
    if (frac.size() > 8) throw CliError(exit_user_error, "amount has more than 8 decimals");
    frac.append(8 - frac.size(), '0');
    for (char c : whole + frac)
        if (!isdigit(uint8_t(c))) throw CliError(exit_user_error, "bad amount: " + text);
    return Amount(std::stoull(whole.empty() ? "0" : whole)) * kCoin + Amount(std::stoull(frac));
}

void load_conf(Ctx& ctx) {
    std::ifstream in(ctx.datadir / "minichain.conf");
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw CliError(exit_user_error, "conf line has no '=': " + line);
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (key == "params") {
            auto p = params_by_name(value);
            if (!p) throw CliError(exit_user_error, "unknown params name: " + value);
            ctx.params = *p;
        } else if (key == "spacing_s")
            ctx.params.target_spacing = std::stoull(value);
        else if (key == "retarget_interval")
            ctx.params.retarget_interval = uint32_t(std::stoul(value));
        else if (key == "halving_interval")
            ctx.params.halving_interval = uint32_t(std::stoul(value));
        else if (key == "coinbase_maturity")
            ctx.params.coinbase_maturity = uint32_t(std::stoul(value));
        else if (key == "seed")
            ctx.seed = std::stoull(value);
        else
            throw CliError(exit_user_error, "unknown conf key: " + key);
    }
}

struct OpenedChain {
    ChainStore store;
    BlockTree tree;
    Wallet wallet;
    KvLog wallet_kv;

    OpenedChain(ChainStore s, BlockTree t, const std::filesystem::path& wallet_path)
        : store(std::move(s)), tree(std::move(t)), wallet_kv(wallet_path) {}
};

void load_wallet(Wallet& wallet, KvLog& kv) {
    for (const auto& [key, value] : kv.entries()) {
        std::string k = to_string(key);
        if (k.rfind("key:", 0) == 0 && !value.empty())
            wallet.create_key(k.substr(4), value);
        else if (k.rfind("redeem:", 0) == 0 && !value.empty())
            wallet.add_redeem_script(Script{value});
    }
}

std::unique_ptr<OpenedChain> open_chain(const Ctx& ctx) {
    ChainStore store(ctx.datadir, ctx.params.network_magic);
    std::vector<Block> blocks = store.load_all_blocks();
    if (blocks.empty())
        throw CliError(exit_user_error,
                       "no chain in " + ctx.datadir.string() + "; run `minichain init` first");

    std::vector<Digest32> expected;
    for (uint32_t h = 0;; ++h) {
        auto hash = store.hash_at_height(h);
        if (!hash) break;
        expected.push_back(*hash);
    }
    ReplayResult replay = replay_chain(blocks, ctx.params, expected);
    if (!replay.ok)
        throw CliError(exit_io_error,
                       "datadir fails revalidation at height " +
                           std::to_string(replay.fail_height) + " (" +
                           std::string(to_string(replay.error)) + ")");

    BlockTree tree(blocks[0], ctx.params);
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        AcceptResult res = tree.accept_block(blocks[i], blocks[i].header.time);
        if (res.status != AcceptResult::Status::connected)
            throw CliError(exit_io_error, "datadir block did not reconnect");
    }
    auto opened = std::make_unique<OpenedChain>(std::move(store), std::move(tree),
                                                ctx.datadir / "wallet.kv");
    load_wallet(opened->wallet, opened->wallet_kv);
    return opened;
}

// -------- pending pool (CLI-side mempool persisted in the wallet kv) --------

std::vector<std::pair<std::string, Transaction>> pending_txs(const KvLog& kv) {
    std::vector<std::pair<std::string, Transaction>> out;
    for (const auto& [key, value] : kv.entries()) {
        std::string k = to_string(key);
        if (k.rfind("mempool:", 0) == 0 && !value.empty())
            out.emplace_back(k, deserialize_tx(value));
    }
    return out;  // KvLog map iterates keys in order; keys are zero-padded
}

void submit_pending(KvLog& kv, const Transaction& tx) {
    uint64_t seq = 0;
    if (auto v = kv.get("mempool_seq")) seq = read_u64_le(v->data());
    char key[32];
    std::snprintf(key, sizeof(key), "mempool:%012llu", (unsigned long long)seq);
    kv.put(std::string(key), ByteSpan(serialize_tx(tx)));
    Bytes next;
    append_u64(next, seq + 1);
    kv.put("mempool_seq", ByteSpan(next));
}

std::set<OutPoint> pending_spends(const KvLog& kv) {
    std::set<OutPoint> spent;
    for (const auto& [key, tx] : pending_txs(kv))
        for (const auto& in : tx.inputs) spent.insert(in.prevout);
    return spent;
}

Address parse_address(const std::string& text) {
    AddressError aerr;
    auto decoded = decode_address(text, &aerr);
    if (!decoded) {
        std::string why = aerr == AddressError::bad_checksum ? "bad checksum"
                          : aerr == AddressError::bad_length ? "bad length"
                                                             : "bad character";
        throw CliError(exit_user_error, "invalid address (" + why + "): " + text);
    }
    Address a;
    a.version = decoded->first;
    a.payload = decoded->second;
    a.text = text;
    return a;
}

Script script_for_address(const Address& a) {
    if (a.version == kVersionP2PKH) return make_p2pkh(a.payload);
    if (a.version == kVersionP2SH) return make_p2sh(a.payload);
    throw CliError(exit_user_error, "unknown address version " + std::to_string(a.version));
}

// ---------------- commands ----------------

int cmd_init(Ctx& ctx, const std::string& message, std::ostream& out) {
    std::filesystem::create_directories(ctx.datadir);
    {
        ChainStore probe(ctx.datadir, ctx.params.network_magic);
        if (!probe.file().locations().empty())
            throw CliError(exit_user_error, "datadir already initialized");

        Block genesis = make_genesis(ctx.params, message, 0);
        Digest32 hash = block_hash(genesis.header);
        BlockLocation loc = probe.append_block(genesis);
        probe.index_block(hash, 0, loc, true);
        probe.flush();

        KvLog wallet_kv(ctx.datadir / "wallet.kv");
        std::string seed = "wallet-default-" + std::to_string(ctx.seed);
        wallet_kv.put("key:default", ByteSpan(to_bytes(seed)));
        wallet_kv.flush();

        Wallet wallet;
        wallet.create_key("default", to_bytes(seed));

        std::ofstream conf(ctx.datadir / "minichain.conf");
        conf << "# minichain configuration\n";
        conf << "params=simnet\n";

        if (ctx.json) {
            ordered_json j{{"genesis", hex_encode(hash)},
                           {"message", message},
                           {"address", wallet.address("default").text}};
            out << j.dump(2) << "\n";
        } else {
            out << "initialized " << ctx.datadir.string() << "\n";
            out << "genesis " << hex_encode(hash) << "\n";
            out << "default address " << wallet.address("default").text << "\n";
        }
    }
    return exit_ok;
}

int cmd_mine(Ctx& ctx, unsigned blocks, const std::string& to, std::ostream& out) {
    auto chain = open_chain(ctx);
    Address dest = to.empty() ? chain->wallet.address("default") : parse_address(to);
    Script coinbase_script = script_for_address(dest);

    ordered_json jblocks = ordered_json::array();
    for (unsigned i = 0; i < blocks; ++i) {
        const ChainState& state = chain->tree.state();
        std::vector<Transaction> candidates;
        std::vector<std::string> keys;
        for (auto& [key, tx] : pending_txs(chain->wallet_kv)) {
            candidates.push_back(tx);
            keys.push_back(key);
        }
        uint64_t time = state.tip_time() + ctx.params.target_spacing;
        Block block = assemble_block(state, candidates, coinbase_script, time,
                                     ctx.seed ^ (uint64_t(state.height()) + 1));

        AcceptResult res = chain->tree.accept_block(block, time);
        if (res.status != AcceptResult::Status::connected)
            throw CliError(exit_io_error,
                           "mined block rejected: " + std::string(to_string(res.error)));

        Digest32 hash = block_hash(block.header);
        BlockLocation loc = chain->store.append_block(block);
        chain->store.index_block(hash, chain->tree.state().height(), loc, true);

        // retire pending txs the block picked up
        std::set<Digest32> included;
        for (std::size_t t = 1; t < block.transactions.size(); ++t)
            included.insert(txid(block.transactions[t]));
        for (std::size_t k = 0; k < candidates.size(); ++k)
            if (included.count(txid(candidates[k]))) chain->wallet_kv.put(keys[k], ByteSpan());

        if (ctx.json) {
            jblocks.push_back({{"height", chain->tree.state().height()},
                               {"hash", hex_encode(hash)},
                               {"txs", block.transactions.size()}});
        } else {
            out << "block " << chain->tree.state().height() << " " << hex_encode(hash) << " ("
                << block.transactions.size() << " txs)\n";
        }
    }
    chain->store.flush();
    chain->wallet_kv.flush();
    if (ctx.json) out << jblocks.dump(2) << "\n";
    return exit_ok;
}

int cmd_send(Ctx& ctx, const std::string& to, const std::string& amount_text,
             const std::string& fee_text, std::ostream& out) {
    auto chain = open_chain(ctx);
    Address dest = parse_address(to);
    Amount amount = parse_amount(amount_text);
    Amount fee = parse_amount(fee_text);

    std::set<OutPoint> exclude = pending_spends(chain->wallet_kv);
    Transaction tx =
        chain->wallet.build_payment(chain->tree.state(), dest, amount, fee, &exclude);
    tx = chain->wallet.sign_all(chain->tree.state(), tx);
    submit_pending(chain->wallet_kv, tx);
    chain->wallet_kv.flush();

    if (ctx.json) {
        ordered_json j{{"txid", hex_encode(txid(tx))},
                       {"amount", format_amount(amount)},
                       {"fee", format_amount(fee)}};
        out << j.dump(2) << "\n";
    } else {
        out << "txid " << hex_encode(txid(tx)) << " (pending; mine a block to confirm)\n";
    }
    return exit_ok;
}

int cmd_multisig(Ctx& ctx, unsigned m, const std::string& keys_csv, std::ostream& out) {
    auto chain = open_chain(ctx);

    std::vector<PublicKey> pubkeys;
    std::stringstream ss(keys_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item.size() == 66) {
            auto raw = hex_decode(item);
            if (!raw || raw->size() != 33)
                throw CliError(exit_user_error, "bad pubkey hex: " + item);
            PublicKey pk;
            std::copy(raw->begin(), raw->end(), pk.bytes.begin());
            if (!public_key_valid(pk))
                throw CliError(exit_user_error, "not a valid curve point: " + item);
            pubkeys.push_back(pk);
        } else if (const KeyPair* kp = chain->wallet.key(item)) {
            pubkeys.push_back(kp->public_key);
        } else {
            // fresh labelled key, persisted for later signing
            std::string seed = "wallet-" + item + "-" + std::to_string(ctx.seed);
            const KeyPair& fresh = chain->wallet.create_key(item, to_bytes(seed));
            chain->wallet_kv.put("key:" + item, ByteSpan(to_bytes(seed)));
            pubkeys.push_back(fresh.public_key);
        }
    }
    if (m < 1 || pubkeys.size() < m || pubkeys.size() > 16)
        throw CliError(exit_user_error, "multisig requires 1 <= m <= N <= 16");

    auto [redeem, address] = chain->wallet.create_multisig(m, pubkeys);
    chain->wallet_kv.put("redeem:" + hex_encode(hash20(redeem.bytes)), ByteSpan(redeem.bytes));
    chain->wallet_kv.flush();

    if (ctx.json) {
        ordered_json j{{"m", m},
                       {"n", pubkeys.size()},
                       {"redeem_script", redeem.to_hex()},
                       {"address", address.text}};
        out << j.dump(2) << "\n";
    } else {
        out << "redeem script " << redeem.to_hex() << "\n";
        out << "address " << address.text << "\n";
    }
    return exit_ok;
}

// channel state lives under wallet.kv key "channel:current"
int cmd_channel(Ctx& ctx, const std::string& action, const std::string& amount_text,
                uint64_t expiry, const std::string& fee_text, std::ostream& out) {
    auto chain = open_chain(ctx);
    KvLog& kv = chain->wallet_kv;
    const KeyPair* funder = chain->wallet.key("default");
    if (!funder) throw CliError(exit_io_error, "wallet has no default key");

    // the payee is a second local key standing in for the counterparty
    const KeyPair* payee = chain->wallet.key("payee");
    if (!payee) {
        std::string seed = "wallet-payee-" + std::to_string(ctx.seed);
        payee = &chain->wallet.create_key("payee", to_bytes(seed));
        kv.put("key:payee", ByteSpan(to_bytes(seed)));
    }

    auto load_channel = [&]() -> Channel {
        auto v = kv.get("channel:current");
        if (!v || v->empty())
            throw CliError(exit_not_found, "no channel; run `minichain channel open` first");
        return Channel::deserialize(*v, *funder);
    };
    auto save_channel = [&](const Channel& ch) {
        kv.put("channel:current", ByteSpan(ch.serialize()));
    };
    auto ensure_funding_confirmed = [&](Channel& ch) {
        if (ch.state() == Channel::State::pending_funding) {
            if (!chain->tree.state().utxos().find(ch.funding_outpoint()))
                throw CliError(exit_user_error,
                               "funding not confirmed yet; mine a block first");
            ch.mark_funding_confirmed();
        }
    };

    ordered_json j;
    if (action == "open") {
        if (kv.get("channel:current") && !kv.get("channel:current")->empty())
            throw CliError(exit_user_error, "a channel already exists; close or refund it");
        Amount capacity = parse_amount(amount_text);
        Amount fee = parse_amount(fee_text);
        if (expiry == 0) throw CliError(exit_user_error, "channel open needs --expiry <time>");

        Channel ch = Channel::open(chain->wallet, "default", *payee, chain->tree.state(),
                                   capacity, fee, expiry);
        submit_pending(kv, ch.funding_tx());
        save_channel(ch);
        chain->wallet_kv.put("redeem:" + hex_encode(hash20(ch.redeem_script().bytes)),
                             ByteSpan(ch.redeem_script().bytes));
        kv.flush();
        j = ordered_json{{"funding_txid", hex_encode(txid(ch.funding_tx()))},
                         {"capacity", format_amount(capacity)},
                         {"fee", format_amount(fee)},
                         {"refund_time", expiry},
                         {"address", p2sh_address(ch.redeem_script()).text}};
        if (!ctx.json)
            out << "channel funding " << hex_encode(txid(ch.funding_tx()))
                << " (pending; mine to open)\nrefund locked until " << expiry << "\n";
    } else if (action == "pay") {
        Channel ch = load_channel();
        ensure_funding_confirmed(ch);
        Amount increment = parse_amount(amount_text);
        ch.pay(increment);
        save_channel(ch);
        kv.flush();
        j = ordered_json{{"commitment_index", ch.commitment_index()},
                         {"funder_amount", format_amount(ch.funder_amount())},
                         {"payee_amount", format_amount(ch.payee_amount())}};
        if (!ctx.json)
            out << "commitment " << ch.commitment_index() << ": funder "
                << format_amount(ch.funder_amount()) << ", payee "
                << format_amount(ch.payee_amount()) << "\n";
    } else if (action == "close") {
        Channel ch = load_channel();
        ensure_funding_confirmed(ch);
        Transaction settle = ch.close(*payee);
        submit_pending(kv, settle);
        save_channel(ch);
        kv.flush();
        j = ordered_json{{"close_txid", hex_encode(txid(settle))},
                         {"funder_amount", format_amount(ch.funder_amount())},
                         {"payee_amount", format_amount(ch.payee_amount())}};
        if (!ctx.json)
            out << "close tx " << hex_encode(txid(settle)) << " (pending; mine to settle)\n";
    } else if (action == "refund") {
        Channel ch = load_channel();
        Transaction refund = ch.refund();
        uint64_t next_time = chain->tree.state().tip_time() + ctx.params.target_spacing;
        if (!is_final(refund, next_time))
            throw CliError(exit_user_error,
                           "refund is locked until " + std::to_string(refund.lock_time) +
                               "; chain time is " + std::to_string(next_time));
        submit_pending(kv, refund);
        ch.mark_refunded();
        save_channel(ch);
        kv.flush();
        j = ordered_json{{"refund_txid", hex_encode(txid(refund))},
                         {"amount", format_amount(ch.capacity() - ch.fee())}};
        if (!ctx.json)
            out << "refund tx " << hex_encode(txid(refund)) << " (pending; mine to settle)\n";
    } else {
        throw CliError(exit_user_error, "unknown channel action: " + action);
    }
    if (ctx.json) out << j.dump(2) << "\n";
    return exit_ok;
}

int cmd_explore(Ctx& ctx, const std::string& query, std::ostream& out) {
    auto chain = open_chain(ctx);

    std::optional<Digest32> hash;
    if (query.size() == 64) {
        hash = digest_from_hex<32>(query);
        if (!hash) throw CliError(exit_user_error, "bad block hash: " + query);
    } else {
        try {
            uint32_t height = uint32_t(std::stoul(query));
            hash = chain->store.hash_at_height(height);
        } catch (const std::exception&) {
            throw CliError(exit_user_error, "explore expects a 64-hex hash or a height");
        }
    }
    if (!hash) throw CliError(exit_not_found, "block not found: " + query);

    auto info = chain->store.explorer_info(*hash);
    if (!info) throw CliError(exit_not_found, "block not found: " + query);

    if (ctx.json) {
        ordered_json j{{"block_hash", info->block_hash},
                       {"height", info->height},
                       {"next_block", info->next_block ? ordered_json(*info->next_block)
                                                       : ordered_json(nullptr)},
                       {"size_bytes", info->size_bytes},
                       {"prev_block", info->prev_block ? ordered_json(*info->prev_block)
                                                       : ordered_json(nullptr)},
                       {"tx_count", info->tx_count}};
        out << j.dump(2) << "\n";
    } else {
        out << "BlockHash: " << info->block_hash << "\n";
        out << "height: " << info->height << "\n";
        out << "next block: " << (info->next_block ? *info->next_block : "none") << "\n";
        out << "size in bytes: " << info->size_bytes << "\n";
        out << "prev block: " << (info->prev_block ? *info->prev_block : "none") << "\n";
        out << "tx count: " << info->tx_count << "\n";
    }
    return exit_ok;
}

int cmd_supply(Ctx& ctx, const std::string& params_name, std::ostream& out) {
    ChainParams params = ctx.params;
    if (!params_name.empty()) {
        auto p = params_by_name(params_name);
        if (!p) throw CliError(exit_user_error, "unknown params name: " + params_name);
        params = *p;
    }

    ordered_json epochs = ordered_json::array();
    Amount running = 0;
    for (uint64_t k = 0;; ++k) {
        Amount subsidy = block_subsidy(k * params.halving_interval, params);
        if (subsidy == 0) break;
        Amount epoch_total = subsidy * Amount(params.halving_interval);
        running += epoch_total;
        uint64_t first = k * params.halving_interval;
        uint64_t last = first + params.halving_interval - 1;
        if (ctx.json) {
            epochs.push_back({{"epoch", k},
                              {"first_height", first},
                              {"last_height", last},
                              {"subsidy", format_amount(subsidy)},
                              {"epoch_total", format_amount(epoch_total)},
                              {"running_total", format_amount(running)}});
        } else {
            out << "epoch " << k << "  heights " << first << "-" << last << "  subsidy "
                << format_amount(subsidy) << "  epoch total " << format_amount(epoch_total)
                << "  running " << format_amount(running) << "\n";
        }
    }
    Amount cap = asymptotic_supply(params);
    if (ctx.json) {
        ordered_json j{{"epochs", epochs},
                       {"total", format_amount(cap)},
                       {"cap", format_amount(Amount(21'000'000) * kCoin)}};
        out << j.dump(2) << "\n";
    } else {
        out << "total " << format_amount(cap) << " < " << format_amount(Amount(21'000'000) * kCoin)
            << "\n";
    }
    return exit_ok;
}

int cmd_simulate(Ctx& ctx, const std::string& scenario_path, unsigned sweep, bool seed_given,
                 std::ostream& out) {
    std::ifstream in(scenario_path);
    if (!in) throw CliError(exit_io_error, "cannot open scenario file: " + scenario_path);
    std::stringstream buffer;
    buffer << in.rdbuf();

    ScenarioConfig cfg;
    try {
        cfg = ScenarioConfig::from_kv_text(buffer.str());
    } catch (const std::invalid_argument& e) {
        throw CliError(exit_user_error, e.what());
    }
    if (seed_given) cfg.seed = ctx.seed;
    std::string problem = cfg.validate();
    if (!problem.empty()) throw CliError(exit_user_error, "scenario: " + problem);

    auto run_one = [&](uint64_t seed) -> std::pair<std::string, std::string> {
        ScenarioConfig c = cfg;
        c.seed = seed;
        switch (c.adversary.kind) {
            case AdversaryConfig::Kind::double_spend: {
                DoubleSpendReport r = run_double_spend(c);
                return {r.to_text(), r.to_json_text()};
            }
            case AdversaryConfig::Kind::withhold: {
                WithholdReport r = run_withhold(c);
                return {r.to_text(), r.to_json_text()};
            }
            default: {
                Simulator sim(c);
                SimReport r = sim.run();
                return {r.to_text(), r.to_json_text()};
            }
        }
    };

    if (sweep <= 1) {
        auto [text, json] = run_one(cfg.seed);
        out << (ctx.json ? json : text);
        if (ctx.json) out << "\n";
        return exit_ok;
    }

    // independent seeded runs, each with private state
    std::vector<std::pair<std::string, std::string>> results(sweep);
    std::atomic<unsigned> next{0};
    unsigned workers = std::min<unsigned>(sweep, std::thread::hardware_concurrency());
    if (workers == 0) workers = 2;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (unsigned i = next.fetch_add(1); i < sweep; i = next.fetch_add(1))
                results[i] = run_one(cfg.seed + i);
        });
    }
    for (auto& t : pool) t.join();

    if (ctx.json) {
        out << "[\n";
        for (unsigned i = 0; i < sweep; ++i)
            out << results[i].second << (i + 1 < sweep ? ",\n" : "\n");
        out << "]\n";
    } else {
        for (unsigned i = 0; i < sweep; ++i) {
            out << "# seed " << (cfg.seed + i) << "\n";
            out << results[i].first;
        }
    }
    return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"minichain: a miniature UTXO blockchain with PoW, scripts, "
                 "channels and a deterministic network simulator"};
    app.require_subcommand(0, 1);

    Ctx ctx;
    std::string datadir_str;
    app.add_option("--datadir", datadir_str, "data directory")
        ->envname("MINICHAIN_DATADIR")
        ->default_val("./minichain-data");
    bool json_flag = false;
    app.add_flag("--json", json_flag, "machine-readable output");
    uint64_t seed_flag = 1;
    auto* seed_opt = app.add_option("--seed", seed_flag, "deterministic seed");

    std::string init_message{kDefaultGenesisMessage};
    auto* init_cmd = app.add_subcommand("init", "create a new chain (genesis block)");
    init_cmd->add_option("--message", init_message, "genesis coinbase message");

    unsigned mine_blocks = 1;
    std::string mine_to;
    auto* mine_cmd = app.add_subcommand("mine", "mine blocks, confirming pending transactions");
    mine_cmd->add_option("--blocks", mine_blocks, "number of blocks")->default_val(1);
    mine_cmd->add_option("--to", mine_to, "coinbase payout address");

    std::string send_to, send_amount, send_fee{"0.01"};
    auto* send_cmd = app.add_subcommand("send", "queue a payment from the wallet");
    send_cmd->add_option("--to", send_to, "destination address")->required();
    send_cmd->add_option("--amount", send_amount, "coins, e.g. 12.5")->required();
    send_cmd->add_option("--fee", send_fee, "fee in coins");

    unsigned multisig_m = 0;
    std::string multisig_keys;
    auto* multisig_cmd = app.add_subcommand("multisig", "create an M-of-N P2SH address");
    multisig_cmd->add_option("--m", multisig_m, "required signatures")->required();
    multisig_cmd->add_option("--keys", multisig_keys, "comma-separated pubkeys or labels")
        ->required();

    std::string channel_action, channel_amount{"0"}, channel_fee{"0.01"};
    uint64_t channel_expiry = 0;
    auto* channel_cmd = app.add_subcommand("channel", "micropayment channel demo");
    channel_cmd->add_option("action", channel_action, "open|pay|close|refund")->required();
    channel_cmd->add_option("--capacity", channel_amount, "channel capacity (open)");
    channel_cmd->add_option("--amount", channel_amount, "payment increment (pay)");
    channel_cmd->add_option("--expiry", channel_expiry, "refund lock time (open)");
    channel_cmd->add_option("--fee", channel_fee, "channel transaction fee");

    std::string explore_query;
    auto* explore_cmd = app.add_subcommand("explore", "block explorer lookup");
    explore_cmd->add_option("query", explore_query, "block hash or height")->required();

    std::string supply_params;
    auto* supply_cmd = app.add_subcommand("supply", "halving schedule and supply cap");
    supply_cmd->add_option("--params", supply_params, "simnet or mainnet-like");

    std::string scenario_path;
    unsigned sweep = 1;
    auto* sim_cmd = app.add_subcommand("simulate", "run a network scenario");
    sim_cmd->add_option("--scenario", scenario_path, "scenario file")->required();
    sim_cmd->add_option("--sweep", sweep, "run N consecutive seeds")->default_val(1);

    std::vector<std::string> argv_copy = args;
    std::vector<const char*> argv;
    argv.push_back("minichain");
    for (const auto& a : argv_copy) argv.push_back(a.c_str());

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::stringstream out_buf, err_buf;
        int code = app.exit(e, out_buf, err_buf);
        out << out_buf.str();
        err << err_buf.str();
        return code == 0 ? exit_ok : exit_user_error;
    }

    ctx.datadir = datadir_str;
    ctx.json = json_flag;
    ctx.seed = seed_flag;

    try {
        if (!*init_cmd) load_conf(ctx);  // init writes the conf itself
        if (*seed_opt) ctx.seed = seed_flag;

        if (*init_cmd) return cmd_init(ctx, init_message, out);
        if (*mine_cmd) return cmd_mine(ctx, mine_blocks, mine_to, out);
        if (*send_cmd) return cmd_send(ctx, send_to, send_amount, send_fee, out);
        if (*multisig_cmd) return cmd_multisig(ctx, multisig_m, multisig_keys, out);
        if (*channel_cmd)
            return cmd_channel(ctx, channel_action, channel_amount, channel_expiry, channel_fee,
                               out);
        if (*explore_cmd) return cmd_explore(ctx, explore_query, out);
        if (*supply_cmd) return cmd_supply(ctx, supply_params, out);
        if (*sim_cmd)
            return cmd_simulate(ctx, scenario_path, sweep, bool(*seed_opt), out);

        out << app.help();
        return exit_ok;
    } catch (const CliError& e) {
        err << "error: " << e.what() << "\n";
        return e.code;
    } catch (const WalletError& e) {
        err << "error: " << e.what() << "\n";
        return exit_user_error;
    } catch (const ChannelError& e) {
        err << "error: " << e.what() << "\n";
        return exit_user_error;
    } catch (const DeserializeError& e) {
        err << "error: corrupt data: " << e.what() << "\n";
        return exit_io_error;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_io_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_user_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_user_error;
    }
}

}  // namespace minichain::cli
