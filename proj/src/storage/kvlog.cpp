// Copyright (c) 2026 The Minichain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "minichain/storage/kvlog.h"

#include <cerrno>
#include <cstring>
#include <stdexcept>

namespace minichain {

KvLog::KvLog(const std::filesystem::path& path) : path_(path) {
    file_ = std::fopen(path.string().c_str(), "r+b");
    if (!file_) file_ = std::fopen(path.string().c_str(), "w+b");
    if (!file_) throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
    replay();
}

KvLog::~KvLog() {
    if (file_) std::fclose(file_);
}

void KvLog::replay() {
    std::fseek(file_, 0, SEEK_END);
    uint64_t file_len = uint64_t(std::ftell(file_));

    uint64_t pos = 0;
    map_.clear();
    // record = key_len u16 | key | val_len u32 | value
    while (pos + 2 <= file_len) {
        uint8_t buf[4];
        std::fseek(file_, long(pos), SEEK_SET);
        if (std::fread(buf, 1, 2, file_) != 2) break;
        uint16_t key_len = uint16_t(buf[0]) | uint16_t(buf[1]) << 8;
        if (pos + 2 + key_len + 4 > file_len) break;  // torn record

        Bytes key(key_len);
        if (key_len && std::fread(key.data(), 1, key_len, file_) != key_len) break;
        if (std::fread(buf, 1, 4, file_) != 4) break;
        uint32_t val_len = read_u32_le(buf);
        if (pos + 2 + key_len + 4 + val_len > file_len) break;  // torn record

        Bytes value(val_len);
        if (val_len && std::fread(value.data(), 1, val_len, file_) != val_len) break;
        map_[std::move(key)] = std::move(value);
        pos += 2 + key_len + 4 + val_len;
    }

    if (pos < file_len) {
        std::fflush(file_);
        std::filesystem::resize_file(path_, pos);
        std::fclose(file_);
        file_ = std::fopen(path_.string().c_str(), "r+b");
        if (!file_) throw IoError("reopen after truncate " + path_.string());
    }
    end_ = pos;
}

void KvLog::put(ByteSpan key, ByteSpan value) {
    if (key.size() > kMaxKey) throw std::invalid_argument("kv key exceeds 65535 bytes");
    if (value.size() > kMaxValue) throw std::invalid_argument("kv value too large");

    Bytes record;
    record.reserve(6 + key.size() + value.size());
    append_u16(record, uint16_t(key.size()));
    record.insert(record.end(), key.begin(), key.end());
    append_u32(record, uint32_t(value.size()));
    record.insert(record.end(), value.begin(), value.end());

    if (std::fseek(file_, long(end_), SEEK_SET) != 0)
        throw IoError("seek " + path_.string() + ": " + std::strerror(errno));
    if (std::fwrite(record.data(), 1, record.size(), file_) != record.size())
        throw IoError("write " + path_.string() + ": " + std::strerror(errno));
    end_ += record.size();
    map_[Bytes(key.begin(), key.end())] = Bytes(value.begin(), value.end());
}

std::optional<Bytes> KvLog::get(ByteSpan key) const {
    auto it = map_.find(Bytes(key.begin(), key.end()));
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void KvLog::flush() {
    if (std::fflush(file_) != 0)
        throw IoError("flush " + path_.string() + ": " + std::strerror(errno));
}

}  // namespace minichain
