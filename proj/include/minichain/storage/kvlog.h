// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_STORAGE_KVLOG_H
#define MINICHAIN_STORAGE_KVLOG_H

#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>

#include "minichain/storage/blockfile.h"

namespace minichain {

/// Log-structured key-value store: records are appended as
/// key_len u16 | key | val_len u32 | value and replayed on open with
/// last-write-wins. Fills the metadata-index role a real node gives LevelDB.
class KvLog {
public:
    explicit KvLog(const std::filesystem::path& path);
    ~KvLog();

    KvLog(const KvLog&) = delete;
    KvLog& operator=(const KvLog&) = delete;
    KvLog(KvLog&& o) noexcept
        : path_(std::move(o.path_)), file_(o.file_), end_(o.end_), map_(std::move(o.map_)) {
        o.file_ = nullptr;
    }

    static constexpr std::size_t kMaxKey = 65535;
    static constexpr std::size_t kMaxValue = 0xFFFFFFFF;

    /// Throws std::invalid_argument on oversize key/value.
    void put(ByteSpan key, ByteSpan value);
    void put(std::string_view key, ByteSpan value) { put(to_bytes(key), value); }
    void put(std::string_view key, std::string_view value) {
        put(to_bytes(key), ByteSpan(to_bytes(value)));
    }

    std::optional<Bytes> get(ByteSpan key) const;
    std::optional<Bytes> get(std::string_view key) const { return get(ByteSpan(to_bytes(key))); }

    void flush();

    std::size_t size() const { return map_.size(); }
    const std::map<Bytes, Bytes>& entries() const { return map_; }

private:
    void replay();

    std::filesystem::path path_;
    std::FILE* file_ = nullptr;
    uint64_t end_ = 0;
    std::map<Bytes, Bytes> map_;
};

}  // namespace minichain

#endif  // MINICHAIN_STORAGE_KVLOG_H
