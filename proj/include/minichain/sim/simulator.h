// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_SIM_SIMULATOR_H
#define MINICHAIN_SIM_SIMULATOR_H

#include <functional>
#include <memory>
#include <queue>
#include <set>

#include "minichain/consensus/blocktree.h"
#include "minichain/sim/scenario.h"
#include "minichain/util/rng.h"
#include "minichain/wallet/wallet.h"

namespace minichain {

struct MinedBlockInfo {
    uint64_t time_ms = 0;
    unsigned miner = 0;
    Digest32 hash;
    uint32_t height = 0;
};

struct RetargetInfo {
    uint32_t height = 0;
    uint32_t old_bits = 0;
    uint32_t new_bits = 0;
};

struct TxRecord {
    unsigned origin = 0;
    uint64_t created_ms = 0;
    std::optional<uint64_t> confirmed_ms;   // first confirmation at the origin node
    std::optional<uint32_t> final_height;   // on node 0's final active chain
};

/// Deterministic run output: a pure function of the ScenarioConfig.
struct SimReport {
    struct NodeInfo {
        std::string tip;
        uint32_t height = 0;
        std::string utxo_digest;
        uint64_t utxo_count = 0;
        uint64_t mempool_size = 0;
    };

    std::vector<NodeInfo> nodes;
    std::vector<MinedBlockInfo> mined;
    uint64_t orphan_count = 0;
    std::vector<RetargetInfo> retargets;
    std::vector<uint64_t> active_intervals_ms;  // node 0's chain, discovery times
    std::vector<std::pair<std::string, TxRecord>> transactions;  // txid hex, creation order

    /// Stable key=value lines; byte-identical for identical configs.
    std::string to_text() const;
    /// The same tree as JSON (stable member order).
    std::string to_json_text() const;

    double mean_interval_ms() const;
};

/// Discrete-event simulator of full nodes and miners: gossip with per-link
/// latency, Bernoulli-per-tick mining against the real target (found blocks
/// carry genuine nonces), mempools, forks and reorgs. One logical thread;
/// events are processed in (time, insertion) order.
class Simulator {
public:
    explicit Simulator(const ScenarioConfig& cfg);

    // pre-run setup ---------------------------------------------------
    /// Chain every node starts with (applied in order after genesis).
    void preload_chain(const std::vector<Block>& blocks);
    void set_start_time_ms(uint64_t t) { start_ms_ = t; }
    void set_node_hash_rate(unsigned node, double rate);
    void schedule_tx(uint64_t at_ms, unsigned node, const Transaction& tx);

    /// Return false to withhold a self-mined block (it still enters the
    /// miner's own trees).
    std::function<bool(unsigned, const Block&)> publish_filter;
    /// Runs after every processed event; adversary controllers live here.
    std::function<void(Simulator&)> after_event;

    SimReport run();

    // introspection and control (valid during callbacks) ---------------
    uint64_t now_ms() const { return now_ms_; }
    unsigned node_count() const { return unsigned(nodes_.size()); }
    const Block& genesis() const { return genesis_; }
    const BlockTree& tree(unsigned node) const { return *nodes_[node].tree; }
    Wallet& wallet(unsigned node) { return nodes_[node].wallet; }
    const KeyPair& miner_key(unsigned node) const;

    /// Private mining world: when set, the node picks its tip and assembles
    /// on this tree instead of its public view (own blocks still enter both).
    void set_mining_tree(unsigned node, std::unique_ptr<BlockTree> tree);
    void clear_mining_tree(unsigned node);
    const BlockTree* mining_tree(unsigned node) const;

    /// Transactions the node must include when mining on a private tree.
    void set_forced_txs(unsigned node, std::vector<Transaction> txs);

    /// Gossip a block the node already knows (the release step of a
    /// withholding attack).
    void broadcast_block(unsigned node, const Digest32& hash);
    void inject_tx(unsigned node, const Transaction& tx);
    /// Feed a block through the node's receive path (tests drive reorgs
    /// deterministically this way).
    void inject_block(unsigned node, const Block& block);
    bool mempool_contains(unsigned node, const Digest32& id) const {
        return nodes_[node].pool.count(id) != 0;
    }

    void stop() { stopped_ = true; }

private:
    enum EventKind { kTick, kTx, kBlock, kPayment };

    struct Event {
        uint64_t at_ms = 0;
        uint64_t seq = 0;
        unsigned target = 0;
        int kind = kTick;
        uint64_t aux = 0;
        Transaction tx;
        Block block;
    };

    struct EventOrder {
        bool operator()(const Event& a, const Event& b) const {
            if (a.at_ms != b.at_ms) return a.at_ms > b.at_ms;
            return a.seq > b.seq;
        }
    };

    struct NodeCtx {
        std::unique_ptr<BlockTree> tree;
        std::unique_ptr<BlockTree> private_tree;
        Wallet wallet;
        double hash_rate = 0;
        Rng rng{0};
        std::vector<unsigned> peers;
        std::map<Digest32, Transaction> pool;
        std::vector<Digest32> pool_order;
        std::map<OutPoint, Digest32> pool_spends;
        std::set<Digest32> inv_tx, inv_block;
        std::vector<Transaction> forced_txs;
    };

    void push_event(Event ev);
    void process(Event& ev);
    bool tips_agree() const;
    void node_tick(unsigned node);
    void receive_tx(unsigned node, const Transaction& tx, bool force_gossip);
    void receive_block(unsigned node, const Block& block);
    void gossip_tx(unsigned node, const Transaction& tx);
    void gossip_block(unsigned node, const Block& block);
    void generate_payment(uint64_t k);
    bool accept_to_mempool(NodeCtx& n, const Transaction& tx);
    void remove_pool_tx(NodeCtx& n, const Digest32& id);
    void apply_block_result(unsigned node, const AcceptResult& res);
    double rate_now(unsigned node) const;
    SimReport build_report();

    ScenarioConfig cfg_;
    Block genesis_;
    std::vector<NodeCtx> nodes_;
    std::priority_queue<Event, std::vector<Event>, EventOrder> queue_;
    uint64_t seq_ = 0;
    uint64_t now_ms_ = 0;
    uint64_t start_ms_ = 0;
    uint64_t tick_ms_ = 100;
    uint64_t mine_until_ms_ = 0;
    bool stopped_ = false;

    std::vector<MinedBlockInfo> mined_;
    std::map<Digest32, uint64_t> mined_time_;
    std::vector<std::pair<Digest32, TxRecord>> tx_records_;
    std::map<Digest32, std::size_t> tx_record_index_;
};

}  // namespace minichain

#endif  // MINICHAIN_SIM_SIMULATOR_H
