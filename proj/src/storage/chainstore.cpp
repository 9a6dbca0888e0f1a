// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/storage/chainstore.h"

#include "minichain/core/serialize.h"

namespace minichain {

namespace {

std::string block_key(const Digest32& hash) { return "b:" + hex_encode(hash); }
std::string height_key(uint32_t height) { return "h:" + std::to_string(height); }

Bytes encode_location(const BlockLocation& loc, uint32_t height) {
    Bytes v;
    append_u64(v, loc.offset);
    append_u32(v, loc.length);
    append_u32(v, height);
    return v;
}

}  // namespace

ChainStore::ChainStore(const std::filesystem::path& datadir, uint32_t network_magic)
    : file_((std::filesystem::create_directories(datadir), datadir / "blocks.dat"),
            network_magic),
      kv_(datadir / "index.kv") {}

BlockLocation ChainStore::append_block(const Block& block) {
    return file_.append(serialize_block(block));
}

void ChainStore::index_block(const Digest32& hash, uint32_t height, const BlockLocation& loc,
                             bool extends_active) {
    kv_.put(block_key(hash), ByteSpan(encode_location(loc, height)));
    if (extends_active) {
        kv_.put(height_key(height), ByteSpan(hash.bytes));
        kv_.put("tip", ByteSpan(hash.bytes));
    }
}

void ChainStore::set_active_chain(uint32_t fork_height,
                                  const std::vector<std::pair<uint32_t, Digest32>>& new_chain) {
    uint32_t max_height = fork_height;
    for (const auto& [height, hash] : new_chain) {
        kv_.put(height_key(height), ByteSpan(hash.bytes));
        if (height > max_height) max_height = height;
        kv_.put("tip", ByteSpan(hash.bytes));
    }
    // clear any stale taller entries from the previous chain
    for (uint32_t h = max_height + 1;; ++h) {
        if (!kv_.get(height_key(h)) || kv_.get(height_key(h))->empty()) break;
        kv_.put(height_key(h), ByteSpan());
    }
}

std::optional<BlockLocation> ChainStore::block_location(const Digest32& hash,
                                                        uint32_t* height_out) const {
    auto v = kv_.get(block_key(hash));
    if (!v || v->size() != 16) return std::nullopt;
    BlockLocation loc{read_u64_le(v->data()), read_u32_le(v->data() + 8)};
    if (height_out) *height_out = read_u32_le(v->data() + 12);
    return loc;
}

std::optional<Block> ChainStore::read_block(const Digest32& hash) const {
    auto loc = block_location(hash);
    if (!loc) return std::nullopt;
    return deserialize_block(file_.read(*loc));
}

std::optional<Digest32> ChainStore::hash_at_height(uint32_t height) const {
    auto v = kv_.get(height_key(height));
    if (!v || v->size() != 32) return std::nullopt;
    return Digest32::from_span(*v);
}

std::optional<Digest32> ChainStore::tip() const {
    auto v = kv_.get("tip");
    if (!v || v->size() != 32) return std::nullopt;
    return Digest32::from_span(*v);
}

std::optional<ExplorerInfo> ChainStore::explorer_info(const Digest32& hash) const {
    uint32_t height = 0;
    auto loc = block_location(hash, &height);
    if (!loc) return std::nullopt;

    Block block = deserialize_block(file_.read(*loc));

    ExplorerInfo info;
    info.block_hash = hex_encode(hash);
    info.height = height;
    info.size_bytes = loc->length;
    info.tx_count = uint32_t(block.transactions.size());
    if (!block.header.prev_hash.is_zero()) info.prev_block = hex_encode(block.header.prev_hash);

    // successor only when this block is on the active chain
    auto active_here = hash_at_height(height);
    if (active_here && *active_here == hash) {
        if (auto next = hash_at_height(height + 1)) {
            auto next_loc = block_location(*next);
            if (next_loc) {
                Block next_block = deserialize_block(file_.read(*next_loc));
                if (next_block.header.prev_hash == hash) info.next_block = hex_encode(*next);
            }
        }
    }
    return info;
}

std::vector<Block> ChainStore::load_all_blocks() const {
    std::vector<Block> blocks;
    blocks.reserve(file_.locations().size());
    for (const auto& loc : file_.locations()) blocks.push_back(deserialize_block(file_.read(loc)));
    return blocks;
}

void ChainStore::flush() {
    file_.flush();
    kv_.flush();
}

}  // namespace minichain
