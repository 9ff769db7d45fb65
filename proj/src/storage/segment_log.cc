// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/storage/segment_log.h"

#include <fcntl.h>
#include <unistd.h>
#include <zlib.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "sentiflow/common/log.h"
#include "sentiflow/common/status_macros.h"

namespace sentiflow::storage {
namespace {

constexpr int kIndexFormat = 1;
constexpr size_t kFrameHeader = 8;  // crc + length

uint32_t Crc(std::string_view bytes) {
  return static_cast<uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()),
            static_cast<uInt>(bytes.size())));
}

void PutFixed32(std::string* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>(v >> (8 * i)));
}

uint32_t GetFixed32(const char* p) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  }
  return v;
}

absl::Status IoError(std::string_view what, const std::filesystem::path& path) {
  return absl::UnavailableError(
      absl::StrCat(std::string(what), " ", path.string(), ": ", std::strerror(errno)));
}

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return IoError("cannot open", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string SegmentName(uint64_t number) {
  return absl::StrFormat("%06d.seg", number);
}

absl::Status WriteAll(int fd, std::string_view data,
                      const std::filesystem::path& path) {
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      return IoError("write failed", path);
    }
    data.remove_prefix(static_cast<size_t>(n));
  }
  return absl::OkStatus();
}

}  // namespace

SegmentLog::SegmentLog(Options options) : options_(std::move(options)) {}

SegmentLog::~SegmentLog() {
  if (sync_thread_.joinable()) {
    sync_thread_.request_stop();
    sync_cv_.notify_all();
    sync_thread_.join();
  }
  std::lock_guard<std::mutex> lock(mu_);
  if (fd_ >= 0) {
    if (dirty_) ::fdatasync(fd_);
    ::close(fd_);
    fd_ = -1;
  }
}

absl::StatusOr<std::unique_ptr<SegmentLog>> SegmentLog::Open(
    Options options, const ReplayFn& replay) {
  std::error_code ec;
  std::filesystem::create_directories(options.dir, ec);
  if (ec) {
    return absl::UnavailableError(absl::StrCat(
        "cannot create ", options.dir.string(), ": ", ec.message()));
  }
  std::unique_ptr<SegmentLog> log(new SegmentLog(std::move(options)));
  bool exists = false;
  RETURN_IF_ERROR(log->LoadIndex(&exists));
  for (size_t i = 0; i < log->segments_.size(); ++i) {
    RETURN_IF_ERROR(log->ReplaySegment(log->segments_[i],
                                       i + 1 == log->segments_.size(), replay));
  }
  {
    std::lock_guard<std::mutex> lock(log->mu_);
    if (log->segments_.empty()) {
      log->segments_.push_back(SegmentName(log->next_segment_++));
      RETURN_IF_ERROR(log->WriteIndex());
    }
    RETURN_IF_ERROR(log->OpenActive(log->segments_.back()));
  }
  if (log->options_.sync.mode == SyncMode::kInterval) {
    SegmentLog* raw = log.get();
    log->sync_thread_ =
        std::jthread([raw](std::stop_token stop) { raw->SyncLoop(stop); });
  }
  return log;
}

absl::Status SegmentLog::LoadIndex(bool* exists) {
  const auto path = options_.dir / "INDEX";
  *exists = std::filesystem::exists(path);
  if (!*exists) return absl::OkStatus();
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  nlohmann::json index = nlohmann::json::parse(text, nullptr, false);
  if (index.is_discarded() || !index.is_object()) {
    return absl::DataLossError("INDEX is not valid JSON");
  }
  if (index.value("format", 0) != kIndexFormat) {
    return absl::FailedPreconditionError("unsupported INDEX format");
  }
  const int stored_buckets = index.value("num_buckets", 0);
  if (stored_buckets != options_.num_buckets) {
    return absl::FailedPreconditionError(absl::StrCat(
        "store was created with num_buckets=", stored_buckets,
        ", opened with ", options_.num_buckets));
  }
  segments_ = index.value("segments", std::vector<std::string>{});
  next_segment_ = index.value("next", uint64_t{1});
  return absl::OkStatus();
}

absl::Status SegmentLog::WriteIndex() {
  nlohmann::json index = {{"format", kIndexFormat},
                          {"num_buckets", options_.num_buckets},
                          {"segments", segments_},
                          {"next", next_segment_}};
  const auto tmp = options_.dir / "INDEX.tmp";
  const auto path = options_.dir / "INDEX";
  const std::string text = index.dump(2) + "\n";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) return IoError("cannot create", tmp);
  absl::Status st = WriteAll(fd, text, tmp);
  if (st.ok() && ::fsync(fd) != 0) st = IoError("fsync failed", tmp);
  ::close(fd);
  RETURN_IF_ERROR(st);
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    return IoError("rename failed", path);
  }
  return absl::OkStatus();
}

absl::Status SegmentLog::ReplaySegment(const std::string& name, bool is_last,
                                       const ReplayFn& replay) {
  const auto path = options_.dir / name;
  if (!std::filesystem::exists(path)) {
    if (is_last) return absl::OkStatus();
    return absl::DataLossError(absl::StrCat("missing segment ", name));
  }
  ASSIGN_OR_RETURN(std::string data, ReadFile(path));
  size_t pos = 0;
  while (pos < data.size()) {
    bool torn = data.size() - pos < kFrameHeader;
    uint32_t len = 0;
    if (!torn) {
      len = GetFixed32(data.data() + pos + 4);
      torn = data.size() - pos - kFrameHeader < len || len < 4;
    }
    std::string_view body;
    if (!torn) {
      body = std::string_view(data).substr(pos + kFrameHeader, len);
      torn = Crc(body) != GetFixed32(data.data() + pos);
    }
    uint32_t key_len = 0;
    if (!torn) {
      key_len = GetFixed32(body.data());
      torn = key_len > body.size() - 4;
    }
    if (torn) {
      if (!is_last) {
        return absl::DataLossError(
            absl::StrCat("corrupt record in ", name, " at offset ", pos));
      }
      LogEvent(LogLevel::kWarn, "storage.truncate_torn_tail",
               {{"segment", name}, {"offset", pos}, {"size", data.size()}});
      if (::truncate(path.c_str(), static_cast<off_t>(pos)) != 0) {
        return IoError("truncate failed", path);
      }
      break;
    }
    replay(body.substr(4, key_len), body.substr(4 + key_len));
    pos += kFrameHeader + len;
  }
  return absl::OkStatus();
}

absl::Status SegmentLog::OpenActive(const std::string& name) {
  const auto path = options_.dir / name;
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd_ < 0) return IoError("cannot open segment", path);
  std::error_code ec;
  active_size_ = std::filesystem::file_size(path, ec);
  if (ec) active_size_ = 0;
  return absl::OkStatus();
}

void SegmentLog::CloseActiveLocked() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

absl::Status SegmentLog::SyncLocked() {
  if (fd_ >= 0 && dirty_) {
    if (::fdatasync(fd_) != 0) {
      return IoError("fdatasync failed", options_.dir / segments_.back());
    }
    dirty_ = false;
  }
  return absl::OkStatus();
}

absl::Status SegmentLog::RollLocked() {
  RETURN_IF_ERROR(SyncLocked());
  CloseActiveLocked();
  segments_.push_back(SegmentName(next_segment_++));
  RETURN_IF_ERROR(WriteIndex());
  return OpenActive(segments_.back());
}

absl::Status SegmentLog::WriteLocked(std::string_view key,
                                     std::string_view value) {
  std::string body;
  body.reserve(4 + key.size() + value.size());
  PutFixed32(&body, static_cast<uint32_t>(key.size()));
  body.append(key);
  body.append(value);
  std::string frame;
  frame.reserve(kFrameHeader + body.size());
  PutFixed32(&frame, Crc(body));
  PutFixed32(&frame, static_cast<uint32_t>(body.size()));
  frame.append(body);
  RETURN_IF_ERROR(WriteAll(fd_, frame, options_.dir / segments_.back()));
  active_size_ += frame.size();
  dirty_ = true;
  return absl::OkStatus();
}

absl::Status SegmentLog::Append(std::string_view key, std::string_view value) {
  std::lock_guard<std::mutex> lock(mu_);
  if (fd_ < 0) return absl::FailedPreconditionError("segment log closed");
  if (active_size_ >= options_.segment_bytes) RETURN_IF_ERROR(RollLocked());
  RETURN_IF_ERROR(WriteLocked(key, value));
  if (options_.sync.mode == SyncMode::kAlways) RETURN_IF_ERROR(SyncLocked());
  return absl::OkStatus();
}

absl::Status SegmentLog::Sync() {
  std::lock_guard<std::mutex> lock(mu_);
  return SyncLocked();
}

absl::Status SegmentLog::Rewrite(
    const std::function<absl::Status(const EmitFn&)>& producer) {
  std::lock_guard<std::mutex> lock(mu_);
  RETURN_IF_ERROR(SyncLocked());
  CloseActiveLocked();
  const std::vector<std::string> old = segments_;
  segments_.clear();
  segments_.push_back(SegmentName(next_segment_++));
  RETURN_IF_ERROR(OpenActive(segments_.back()));
  absl::Status st = producer([this](std::string_view k, std::string_view v) {
    if (active_size_ >= options_.segment_bytes) {
      RETURN_IF_ERROR(SyncLocked());
      CloseActiveLocked();
      segments_.push_back(SegmentName(next_segment_++));
      RETURN_IF_ERROR(OpenActive(segments_.back()));
    }
    return WriteLocked(k, v);
  });
  if (st.ok()) st = SyncLocked();
  if (!st.ok()) {
    // Leave the previous generation authoritative.
    CloseActiveLocked();
    for (const auto& name : segments_) {
      std::filesystem::remove(options_.dir / name);
    }
    segments_ = old;
    RETURN_IF_ERROR(OpenActive(segments_.back()));
    return st;
  }
  RETURN_IF_ERROR(WriteIndex());
  for (const auto& name : old) {
    std::error_code ec;
    std::filesystem::remove(options_.dir / name, ec);
  }
  return absl::OkStatus();
}

std::vector<std::string> SegmentLog::segment_names() const {
  std::lock_guard<std::mutex> lock(mu_);
  return segments_;
}

void SegmentLog::SyncLoop(std::stop_token stop) {
  const auto interval =
      std::chrono::milliseconds(std::max<int64_t>(1, options_.sync.interval_ms));
  std::unique_lock<std::mutex> lock(mu_);
  while (!stop.stop_requested()) {
    sync_cv_.wait_for(lock, stop, interval, [] { return false; });
    if (stop.stop_requested()) break;
    absl::Status st = SyncLocked();
    if (!st.ok()) {
      LogEvent(LogLevel::kError, "storage.sync_failed",
               {{"error", st.ToString()}});
    }
  }
}

}  // namespace sentiflow::storage
