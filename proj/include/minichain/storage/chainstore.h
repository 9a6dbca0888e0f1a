// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_STORAGE_CHAINSTORE_H
#define MINICHAIN_STORAGE_CHAINSTORE_H

#include <string>

#include "minichain/core/block.h"
#include "minichain/core/params.h"
#include "minichain/storage/blockfile.h"
#include "minichain/storage/kvlog.h"

namespace minichain {

/// Explorer view of one block.
struct ExplorerInfo {
    std::string block_hash;  // hex
    uint32_t height = 0;
    std::optional<std::string> next_block;  // active-chain successor only
    uint64_t size_bytes = 0;                // on-disk payload length
    std::optional<std::string> prev_block;
    uint32_t tx_count = 0;
};

/// blocks.dat + index.kv inside a data directory. Keys:
///   b:<hash-hex> -> offset u64 | length u32 | height u32   (branch-agnostic)
///   h:<height>   -> block hash (active chain only)
///   tip          -> active tip hash
/// Orphaned blocks stay readable by hash; h:* and tip track the active chain.
class ChainStore {
public:
    explicit ChainStore(const std::filesystem::path& datadir,
                        uint32_t network_magic = 0x4D494E49);
    ChainStore(ChainStore&&) = default;

    BlockLocation append_block(const Block& block);

    /// Requires the block to be appended already. When extends_active, also
    /// points h:<height> and tip at it.
    void index_block(const Digest32& hash, uint32_t height, const BlockLocation& loc,
                     bool extends_active);

    /// Reorg support: rewrite h:* and tip for the new active chain starting
    /// at fork_height (heights beyond the new tip are cleared).
    void set_active_chain(uint32_t fork_height,
                          const std::vector<std::pair<uint32_t, Digest32>>& new_chain);

    std::optional<Block> read_block(const Digest32& hash) const;
    std::optional<BlockLocation> block_location(const Digest32& hash,
                                                uint32_t* height_out = nullptr) const;
    std::optional<Digest32> hash_at_height(uint32_t height) const;
    std::optional<Digest32> tip() const;

    std::optional<ExplorerInfo> explorer_info(const Digest32& hash) const;

    /// All complete block records in file order (the reopen/replay path).
    std::vector<Block> load_all_blocks() const;

    void flush();

    KvLog& kv() { return kv_; }
    const KvLog& kv() const { return kv_; }
    const BlockFile& file() const { return file_; }

private:
    BlockFile file_;
    KvLog kv_;
};

}  // namespace minichain

#endif  // MINICHAIN_STORAGE_CHAINSTORE_H
