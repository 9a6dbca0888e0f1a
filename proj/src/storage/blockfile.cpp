// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/storage/blockfile.h"

#include <cerrno>
#include <cstring>

namespace minichain {

namespace {

std::string errno_string(const char* what, const std::filesystem::path& path) {
    return std::string(what) + " " + path.string() + ": " + std::strerror(errno);
}

}  // namespace

BlockFile::BlockFile(const std::filesystem::path& path, uint32_t magic)
    : path_(path), magic_(magic) {
    file_ = std::fopen(path.string().c_str(), "r+b");
    if (!file_) file_ = std::fopen(path.string().c_str(), "w+b");
    if (!file_) throw IoError(errno_string("cannot open", path));
    scan_and_recover();
}

BlockFile::~BlockFile() {
    if (file_) std::fclose(file_);
}

void BlockFile::scan_and_recover() {
    if (std::fseek(file_, 0, SEEK_END) != 0) throw IoError(errno_string("seek", path_));
    uint64_t file_len = uint64_t(std::ftell(file_));

    uint64_t pos = 0;
    locations_.clear();
    while (pos + 8 <= file_len) {
        uint8_t prefix[8];
        if (std::fseek(file_, long(pos), SEEK_SET) != 0) throw IoError(errno_string("seek", path_));
        if (std::fread(prefix, 1, 8, file_) != 8) break;
        uint32_t magic = read_u32_le(prefix);
        uint32_t length = read_u32_le(prefix + 4);
        if (magic != magic_) break;  // wrong network or garbage: stop here
        if (pos + 8 + length > file_len) break;  // torn record
        locations_.push_back({pos, length});
        pos += 8 + length;
    }

    if (pos < file_len) {
        // drop the torn tail
        if (std::fflush(file_) != 0) throw IoError(errno_string("flush", path_));
        std::filesystem::resize_file(path_, pos);
        std::fclose(file_);
        file_ = std::fopen(path_.string().c_str(), "r+b");
        if (!file_) throw IoError(errno_string("reopen after truncate", path_));
    }
    end_ = pos;
}

BlockLocation BlockFile::append(ByteSpan payload) {
    Bytes record;
    record.reserve(8 + payload.size());
    append_u32(record, magic_);
    append_u32(record, uint32_t(payload.size()));
    record.insert(record.end(), payload.begin(), payload.end());

    if (std::fseek(file_, long(end_), SEEK_SET) != 0) throw IoError(errno_string("seek", path_));
    if (std::fwrite(record.data(), 1, record.size(), file_) != record.size())
        throw IoError(errno_string("write", path_));

    BlockLocation loc{end_, uint32_t(payload.size())};
    locations_.push_back(loc);
    end_ += record.size();
    return loc;
}

Bytes BlockFile::read(const BlockLocation& loc) const {
    if (loc.offset + 8 + loc.length > end_) throw IoError("read beyond end of block file");
    uint8_t prefix[8];
    if (std::fseek(file_, long(loc.offset), SEEK_SET) != 0)
        throw IoError(errno_string("seek", path_));
    if (std::fread(prefix, 1, 8, file_) != 8) throw IoError(errno_string("read", path_));
    if (read_u32_le(prefix) != magic_) throw IoError("bad magic at record location");
    if (read_u32_le(prefix + 4) != loc.length) throw IoError("record length mismatch");

    Bytes payload(loc.length);
    if (loc.length != 0 && std::fread(payload.data(), 1, loc.length, file_) != loc.length)
        throw IoError(errno_string("read", path_));
    return payload;
}

void BlockFile::flush() {
    if (std::fflush(file_) != 0) throw IoError(errno_string("flush", path_));
}

}  // namespace minichain
