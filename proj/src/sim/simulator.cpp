// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/sim/simulator.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "minichain/consensus/miner.h"
#include "minichain/consensus/pow.h"
#include "minichain/crypto/sha256.h"
#include "minichain/script/interpreter.h"

namespace minichain {

namespace {

constexpr double kTwoPow256 = 1.157920892373162e77;

std::vector<unsigned> peers_of(unsigned i, unsigned n, Topology topology) {
    std::vector<unsigned> peers;
    switch (topology) {
        case Topology::complete:
            for (unsigned j = 0; j < n; ++j)
                if (j != i) peers.push_back(j);
            break;
        case Topology::ring:
            if (n > 1) {
                peers.push_back((i + 1) % n);
                if (n > 2) peers.push_back((i + n - 1) % n);
            }
            break;
        case Topology::star:
            if (i == 0) {
                for (unsigned j = 1; j < n; ++j) peers.push_back(j);
            } else {
                peers.push_back(0);
            }
            break;
    }
    return peers;
}

unsigned topology_diameter(unsigned n, Topology topology) {
    switch (topology) {
        case Topology::complete: return 1;
        case Topology::ring: return n / 2;
        case Topology::star: return 2;
    }
    return 1;
}

}  // namespace

Simulator::Simulator(const ScenarioConfig& cfg) : cfg_(cfg) {
    std::string problem = cfg.validate();
    if (!problem.empty()) throw std::invalid_argument("scenario: " + problem);

    genesis_ = make_genesis(cfg.params, cfg.genesis_message, 0);
    tick_ms_ = std::max<uint64_t>(1, cfg.params.target_spacing * 1000 / 10);

    nodes_.resize(cfg.node_count);
    for (unsigned i = 0; i < cfg.node_count; ++i) {
        NodeCtx& n = nodes_[i];
        n.tree = std::make_unique<BlockTree>(genesis_, cfg.params);
        n.wallet.create_key("miner", to_bytes("simnode-" + std::to_string(i)));
        n.hash_rate = cfg.hash_rate;
        n.rng = Rng(cfg.seed ^ (0x9E3779B97F4A7C15ULL * (i + 1)));
        n.peers = peers_of(i, cfg.node_count, cfg.topology);
    }

    // Gossip needs diameter*latency to drain, and a tie minted by the very
    // last tick needs room for a resolving block; five spacings cover it.
    uint64_t drain =
        topology_diameter(cfg.node_count, cfg.topology) * cfg.latency_ms +
        5 * cfg.params.target_spacing * 1000;
    mine_until_ms_ = cfg.mine_until_ms ? cfg.mine_until_ms
                                       : (cfg.duration_ms > drain ? cfg.duration_ms - drain : 0);
}

const KeyPair& Simulator::miner_key(unsigned node) const {
    return *nodes_[node].wallet.key("miner");
}

void Simulator::preload_chain(const std::vector<Block>& blocks) {
    for (auto& n : nodes_) {
        for (const Block& b : blocks) {
            AcceptResult res = n.tree->accept_block(b, b.header.time);
            if (res.status != AcceptResult::Status::connected)
                throw std::invalid_argument("preload block does not connect: " +
                                            std::string(to_string(res.error)));
            n.inv_block.insert(res.hash);
        }
    }
}

void Simulator::set_node_hash_rate(unsigned node, double rate) {
    nodes_[node].hash_rate = rate;
}

void Simulator::set_mining_tree(unsigned node, std::unique_ptr<BlockTree> tree) {
    nodes_[node].private_tree = std::move(tree);
}

void Simulator::clear_mining_tree(unsigned node) {
    nodes_[node].private_tree.reset();
}

const BlockTree* Simulator::mining_tree(unsigned node) const {
    return nodes_[node].private_tree.get();
}

void Simulator::set_forced_txs(unsigned node, std::vector<Transaction> txs) {
    nodes_[node].forced_txs = std::move(txs);
}

void Simulator::push_event(Event ev) {
    ev.seq = seq_++;
    queue_.push(std::move(ev));
}

void Simulator::schedule_tx(uint64_t at_ms, unsigned node, const Transaction& tx) {
    Event ev;
    ev.at_ms = at_ms;
    ev.target = node;
    ev.kind = kTx;
    ev.aux = 1;  // force origin bookkeeping
    ev.tx = tx;
    push_event(std::move(ev));
}

double Simulator::rate_now(unsigned node) const {
    double rate = nodes_[node].hash_rate;
    if (cfg_.rate_change_time_ms != 0 && now_ms_ >= cfg_.rate_change_time_ms)
        rate *= cfg_.rate_change_factor;
    return rate;
}

SimReport Simulator::run() {
    for (unsigned i = 0; i < nodes_.size(); ++i) {
        Event ev;
        ev.at_ms = start_ms_ + tick_ms_;
        ev.target = i;
        ev.kind = kTick;
        push_event(std::move(ev));
    }
    for (uint64_t k = 1; k <= cfg_.payment_count; ++k) {
        Event ev;
        ev.at_ms = start_ms_ + k * cfg_.payment_interval_ms;
        ev.kind = kPayment;
        ev.aux = k;
        push_event(std::move(ev));
    }

    while (!queue_.empty() && !stopped_) {
        Event ev = queue_.top();
        queue_.pop();
        if (ev.at_ms > cfg_.duration_ms) break;
        now_ms_ = ev.at_ms;
        process(ev);
        if (after_event) after_event(*this);
    }
    return build_report();
}

void Simulator::process(Event& ev) {
    switch (ev.kind) {
        case kTick: node_tick(ev.target); break;
        case kTx: receive_tx(ev.target, ev.tx, ev.aux != 0); break;
        case kBlock: receive_block(ev.target, ev.block); break;
        case kPayment: generate_payment(ev.aux); break;
    }
}

bool Simulator::tips_agree() const {
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        if (!(nodes_[i].tree->state().tip_hash() == nodes_[0].tree->state().tip_hash()))
            return false;
    return true;
}

void Simulator::node_tick(unsigned node) {
    NodeCtx& n = nodes_[node];

    // Mining stays open past the drain point while the network disagrees, so
    // an equal-work tie at the cutoff still gets resolved by the next block.
    if (now_ms_ <= mine_until_ms_ || !tips_agree()) {
        BlockTree& mine_view = n.private_tree ? *n.private_tree : *n.tree;
        const ChainState& state = mine_view.state();

        U256 target = bits_to_target(state.expected_bits(state.height() + 1));
        double p = rate_now(node) * (double(tick_ms_) / 1000.0) *
                   ((target.to_double() + 1.0) / kTwoPow256);
        if (p > 1.0) p = 1.0;

        if (p > 0 && n.rng.bernoulli(p)) {
            std::vector<Transaction> candidates;
            if (n.private_tree) {
                candidates = n.forced_txs;
            } else {
                for (const Digest32& id : n.pool_order) {
                    auto it = n.pool.find(id);
                    if (it != n.pool.end()) candidates.push_back(it->second);
                }
            }
            uint64_t time_s = std::max(state.tip_time(), now_ms_ / 1000);
            Block block = assemble_block(state, candidates,
                                         make_p2pkh(hash20(ByteSpan(miner_key(node).public_key.bytes))),
                                         time_s, n.rng.next_u64());
            Digest32 hash = block_hash(block.header);

            uint32_t height = state.height() + 1;
            if (n.private_tree) {
                AcceptResult pres = n.private_tree->accept_block(block, now_ms_ / 1000);
                if (pres.status != AcceptResult::Status::connected)
                    throw std::logic_error("self-mined block rejected by the private tree");
            }
            AcceptResult res = n.tree->accept_block(block, now_ms_ / 1000);
            apply_block_result(node, res);
            n.inv_block.insert(hash);

            mined_.push_back({now_ms_, node, hash, height});
            mined_time_.emplace(hash, now_ms_);

            if (!publish_filter || publish_filter(node, block)) gossip_block(node, block);
        }
    }

    Event next;
    next.at_ms = now_ms_ + tick_ms_;
    next.target = node;
    next.kind = kTick;
    if (next.at_ms <= cfg_.duration_ms) push_event(std::move(next));
}

void Simulator::gossip_tx(unsigned node, const Transaction& tx) {
    for (unsigned peer : nodes_[node].peers) {
        Event ev;
        ev.at_ms = now_ms_ + cfg_.latency_ms;
        ev.target = peer;
        ev.kind = kTx;
        ev.tx = tx;
        push_event(std::move(ev));
    }
}

void Simulator::gossip_block(unsigned node, const Block& block) {
    for (unsigned peer : nodes_[node].peers) {
        Event ev;
        ev.at_ms = now_ms_ + cfg_.latency_ms;
        ev.target = peer;
        ev.kind = kBlock;
        ev.block = block;
        push_event(std::move(ev));
    }
}

void Simulator::broadcast_block(unsigned node, const Digest32& hash) {
    const Block* block = nodes_[node].tree->find_block(hash);
    if (!block) throw std::invalid_argument("broadcast_block: unknown block");
    gossip_block(node, *block);
}

void Simulator::inject_tx(unsigned node, const Transaction& tx) {
    receive_tx(node, tx, true);
}

void Simulator::inject_block(unsigned node, const Block& block) {
    receive_block(node, block);
}

void Simulator::receive_tx(unsigned node, const Transaction& tx, bool record_origin) {
    NodeCtx& n = nodes_[node];
    Digest32 id = txid(tx);

    if (record_origin && !tx_record_index_.count(id)) {
        tx_record_index_.emplace(id, tx_records_.size());
        tx_records_.push_back({id, TxRecord{node, now_ms_, std::nullopt, std::nullopt}});
    }

    if (n.inv_tx.count(id)) return;
    n.inv_tx.insert(id);

    if (accept_to_mempool(n, tx)) gossip_tx(node, tx);
}

bool Simulator::accept_to_mempool(NodeCtx& n, const Transaction& tx) {
    if (tx.is_coinbase() || tx.inputs.empty() || tx.outputs.empty()) return false;
    if (!is_final(tx, now_ms_ / 1000)) return false;

    const ChainState& state = n.tree->state();
    const uint32_t next_height = state.height() + 1;

    Amount in_sum = 0;
    for (std::size_t i = 0; i < tx.inputs.size(); ++i) {
        const OutPoint& prevout = tx.inputs[i].prevout;
        if (n.pool_spends.count(prevout)) return false;  // first-seen wins
        const UtxoEntry* entry = state.utxos().find(prevout);
        if (!entry) return false;
        if (entry->is_coinbase && next_height < entry->height + state.params().coinbase_maturity)
            return false;
        if (!eval(tx.inputs[i].script_sig, entry->output.script_pubkey, {tx, i}).accepted)
            return false;
        in_sum += entry->output.amount;
    }
    if (in_sum < tx.total_output()) return false;

    Digest32 id = txid(tx);
    if (n.pool.count(id)) return false;
    n.pool.emplace(id, tx);
    n.pool_order.push_back(id);
    for (const auto& in : tx.inputs) n.pool_spends.emplace(in.prevout, id);
    return true;
}

void Simulator::remove_pool_tx(NodeCtx& n, const Digest32& id) {
    auto it = n.pool.find(id);
    if (it == n.pool.end()) return;
    for (const auto& in : it->second.inputs) {
        auto sp = n.pool_spends.find(in.prevout);
        if (sp != n.pool_spends.end() && sp->second == id) n.pool_spends.erase(sp);
    }
    n.pool.erase(it);
}

void Simulator::apply_block_result(unsigned node, const AcceptResult& res) {
    NodeCtx& n = nodes_[node];

    // blocks knocked off the chain put their transactions back up for grabs
    for (const Digest32& hash : res.disconnected) {
        const Block* block = n.tree->find_block(hash);
        if (!block) continue;
        for (std::size_t t = 1; t < block->transactions.size(); ++t)
            accept_to_mempool(n, block->transactions[t]);
    }

    for (const Digest32& hash : res.connected) {
        const Block* block = n.tree->find_block(hash);
        if (!block) continue;
        for (std::size_t t = 0; t < block->transactions.size(); ++t) {
            const Transaction& tx = block->transactions[t];
            Digest32 id = txid(tx);
            remove_pool_tx(n, id);
            // evict mempool conflicts: their inputs are now spent
            for (const auto& in : tx.inputs) {
                auto sp = n.pool_spends.find(in.prevout);
                if (sp != n.pool_spends.end()) remove_pool_tx(n, sp->second);
            }
            // confirmation bookkeeping at the origin node
            auto rec = tx_record_index_.find(id);
            if (rec != tx_record_index_.end()) {
                TxRecord& r = tx_records_[rec->second].second;
                if (r.origin == node && !r.confirmed_ms) r.confirmed_ms = now_ms_;
            }
        }
    }
}

void Simulator::receive_block(unsigned node, const Block& block) {
    NodeCtx& n = nodes_[node];
    Digest32 hash = block_hash(block.header);
    if (n.inv_block.count(hash)) return;
    n.inv_block.insert(hash);

    AcceptResult res = n.tree->accept_block(block, now_ms_ / 1000);
    apply_block_result(node, res);

    if (res.status == AcceptResult::Status::connected ||
        res.status == AcceptResult::Status::reorged ||
        res.status == AcceptResult::Status::side_branch)
        gossip_block(node, block);
}

void Simulator::generate_payment(uint64_t k) {
    unsigned sender = unsigned((k - 1) % nodes_.size());
    unsigned recipient = unsigned(k % nodes_.size());
    NodeCtx& s = nodes_[sender];

    Address dest = encode_address(
        kVersionP2PKH, hash20(ByteSpan(miner_key(recipient).public_key.bytes)));
    try {
        Transaction tx =
            s.wallet.build_payment(s.tree->state(), dest, cfg_.payment_amount, cfg_.payment_fee);
        tx = s.wallet.sign_all(s.tree->state(), tx);
        receive_tx(sender, tx, true);
    } catch (const WalletError&) {
        // not enough mature funds yet; skip deterministically
    }
}

SimReport Simulator::build_report() {
    SimReport report;

    for (auto& n : nodes_) {
        SimReport::NodeInfo info;
        info.tip = hex_encode(n.tree->state().tip_hash());
        info.height = n.tree->state().height();
        info.utxo_digest = hex_encode(n.tree->state().utxos().digest());
        info.utxo_count = n.tree->state().utxos().size();
        info.mempool_size = n.pool.size();
        report.nodes.push_back(std::move(info));
    }

    report.mined = mined_;

    const BlockTree& main = *nodes_[0].tree;
    uint64_t orphans = 0;
    std::set<Digest32> counted;
    for (const auto& m : mined_) {
        if (counted.count(m.hash)) continue;
        counted.insert(m.hash);
        if (!main.on_active_chain(m.hash)) ++orphans;
    }
    report.orphan_count = orphans;

    const auto& summaries = main.state().summaries();
    for (uint32_t h = 1; h < summaries.size(); ++h) {
        auto cur = mined_time_.find(summaries[h].hash);
        auto prev = mined_time_.find(summaries[h - 1].hash);
        if (cur != mined_time_.end() && prev != mined_time_.end())
            report.active_intervals_ms.push_back(cur->second - prev->second);
    }
    for (uint32_t h = cfg_.params.retarget_interval; h < summaries.size();
         h += cfg_.params.retarget_interval) {
        report.retargets.push_back({h, summaries[h - 1].bits, summaries[h].bits});
    }

    // final confirmation heights from node 0's perspective
    for (auto& [id, rec] : tx_records_) {
        for (uint32_t h = 0; h < summaries.size() && !rec.final_height; ++h) {
            const Block* b = main.find_block(summaries[h].hash);
            if (!b) continue;
            for (const auto& tx : b->transactions)
                if (txid(tx) == id) {
                    rec.final_height = h;
                    break;
                }
        }
        report.transactions.emplace_back(hex_encode(id), rec);
    }

    return report;
}

double SimReport::mean_interval_ms() const {
    if (active_intervals_ms.empty()) return 0;
    double sum = 0;
    for (uint64_t v : active_intervals_ms) sum += double(v);
    return sum / double(active_intervals_ms.size());
}

std::string SimReport::to_text() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out << "node." << i << ".tip=" << nodes[i].tip << "\n";
        out << "node." << i << ".height=" << nodes[i].height << "\n";
        out << "node." << i << ".utxo_count=" << nodes[i].utxo_count << "\n";
        out << "node." << i << ".utxo_digest=" << nodes[i].utxo_digest << "\n";
        out << "node." << i << ".mempool=" << nodes[i].mempool_size << "\n";
    }
    out << "blocks.mined=" << mined.size() << "\n";
    for (std::size_t j = 0; j < mined.size(); ++j) {
        out << "block." << j << "=" << mined[j].time_ms << "," << mined[j].miner << ","
            << mined[j].height << "," << hex_encode(mined[j].hash) << "\n";
    }
    out << "orphans=" << orphan_count << "\n";
    out << "intervals.count=" << active_intervals_ms.size() << "\n";
    out << "intervals.mean_us=" << uint64_t(mean_interval_ms() * 1000.0) << "\n";
    out << "retargets=" << retargets.size() << "\n";
    for (std::size_t j = 0; j < retargets.size(); ++j) {
        out << "retarget." << j << "=" << retargets[j].height << ","
            << hex_encode(ByteSpan(reinterpret_cast<const uint8_t*>(&retargets[j].old_bits), 4))
            << ","
            << hex_encode(ByteSpan(reinterpret_cast<const uint8_t*>(&retargets[j].new_bits), 4))
            << "\n";
    }
    out << "transactions=" << transactions.size() << "\n";
    for (const auto& [id, rec] : transactions) {
        out << "tx." << id << ".origin=" << rec.origin << "\n";
        out << "tx." << id << ".created_ms=" << rec.created_ms << "\n";
        out << "tx." << id << ".confirmed_ms="
            << (rec.confirmed_ms ? std::to_string(*rec.confirmed_ms) : "unconfirmed") << "\n";
        out << "tx." << id << ".final_height="
            << (rec.final_height ? std::to_string(*rec.final_height) : "none") << "\n";
    }
    return out.str();
}

std::string SimReport::to_json_text() const {
    nlohmann::ordered_json j;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : nodes) {
        j["nodes"].push_back({{"tip", n.tip},
                              {"height", n.height},
                              {"utxo_count", n.utxo_count},
                              {"utxo_digest", n.utxo_digest},
                              {"mempool", n.mempool_size}});
    }
    j["blocks_mined"] = mined.size();
    j["blocks"] = nlohmann::ordered_json::array();
    for (const auto& m : mined)
        j["blocks"].push_back({{"time_ms", m.time_ms},
                               {"miner", m.miner},
                               {"height", m.height},
                               {"hash", hex_encode(m.hash)}});
    j["orphans"] = orphan_count;
    j["intervals_count"] = active_intervals_ms.size();
    j["mean_interval_ms"] = mean_interval_ms();
    j["retargets"] = nlohmann::ordered_json::array();
    for (const auto& r : retargets)
        j["retargets"].push_back(
            {{"height", r.height}, {"old_bits", r.old_bits}, {"new_bits", r.new_bits}});
    j["transactions"] = nlohmann::ordered_json::array();
    for (const auto& [id, rec] : transactions) {
        nlohmann::ordered_json t{{"txid", id},
                                 {"origin", rec.origin},
                                 {"created_ms", rec.created_ms}};
        if (rec.confirmed_ms) t["confirmed_ms"] = *rec.confirmed_ms;
        if (rec.final_height) t["final_height"] = *rec.final_height;
        j["transactions"].push_back(std::move(t));
    }
    return j.dump(2);
}

}  // namespace minichain
