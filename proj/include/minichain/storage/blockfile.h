// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef MINICHAIN_STORAGE_BLOCKFILE_H
#define MINICHAIN_STORAGE_BLOCKFILE_H

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "minichain/util/bytes.h"

namespace minichain {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Position of one record's payload inside the block file.
/// Record layout: magic u32 | length u32 | payload. `offset` points at the
/// record start (the magic), `length` is the payload length.
struct BlockLocation {
    uint64_t offset = 0;
    uint32_t length = 0;

    bool operator==(const BlockLocation&) const = default;
};

/// Append-only file of length-prefixed records. Reopen scans the file,
/// keeps every complete record and truncates a torn tail. Single writer;
/// reads validate magic and bounds so torn records are never returned.
class BlockFile {
public:
    BlockFile(const std::filesystem::path& path, uint32_t magic);
    ~BlockFile();

    BlockFile(const BlockFile&) = delete;
    BlockFile& operator=(const BlockFile&) = delete;
    BlockFile(BlockFile&& o) noexcept
        : path_(std::move(o.path_)), magic_(o.magic_), file_(o.file_), end_(o.end_),
          locations_(std::move(o.locations_)) {
        o.file_ = nullptr;
    }

    BlockLocation append(ByteSpan payload);
    Bytes read(const BlockLocation& loc) const;
    void flush();

    uint64_t file_size() const { return end_; }
    const std::vector<BlockLocation>& locations() const { return locations_; }

private:
    void scan_and_recover();

    std::filesystem::path path_;
    uint32_t magic_;
    std::FILE* file_ = nullptr;
    uint64_t end_ = 0;
    std::vector<BlockLocation> locations_;
};

}  // namespace minichain

#endif  // MINICHAIN_STORAGE_BLOCKFILE_H
