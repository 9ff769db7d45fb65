// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace sentiflow::storage {

enum class SyncMode { kAlways, kInterval, kNever };

struct SyncPolicy {
  SyncMode mode = SyncMode::kInterval;
  int64_t interval_ms = 1000;

  static SyncPolicy Always() { return {SyncMode::kAlways, 0}; }
  static SyncPolicy Interval(int64_t ms) { return {SyncMode::kInterval, ms}; }
  static SyncPolicy Never() { return {SyncMode::kNever, 0}; }
};

// Append-only row log split into numbered segment files, plus an INDEX file
// naming the live segments in replay order:
//
//   <dir>/INDEX          {"format":1,"num_buckets":B,"segments":[...],"next":N}
//   <dir>/000001.seg     records, each:
//                          crc32 (u32 LE) over everything after the length
//                          length (u32 LE) of the rest
//                          key length (u32 LE), key bytes, value bytes
//
// Later records for the same key supersede earlier ones. A torn record at
// the tail of the newest segment is truncated on open; corruption anywhere
// else is reported as data loss.
class SegmentLog {
 public:
  struct Options {
    std::filesystem::path dir;
    int num_buckets = 16;
    SyncPolicy sync;
    uint64_t segment_bytes = 64ull << 20;
  };

  using ReplayFn = std::function<void(std::string_view key, std::string_view value)>;
  using EmitFn = std::function<absl::Status(std::string_view key, std::string_view value)>;

  // Replays every live record through `replay` before returning.
  static absl::StatusOr<std::unique_ptr<SegmentLog>> Open(Options options,
                                                          const ReplayFn& replay);
  ~SegmentLog();

  SegmentLog(const SegmentLog&) = delete;
  SegmentLog& operator=(const SegmentLog&) = delete;

  // Thread-safe.
  absl::Status Append(std::string_view key, std::string_view value);
  absl::Status Sync();

  // Replaces the whole log with the rows produced by `producer`. The caller
  // must block concurrent appends for the duration.
  absl::Status Rewrite(const std::function<absl::Status(const EmitFn&)>& producer);

  std::vector<std::string> segment_names() const;

 private:
  explicit SegmentLog(Options options);

  absl::Status LoadIndex(bool* exists);
  absl::Status WriteIndex();
  absl::Status ReplaySegment(const std::string& name, bool is_last,
                             const ReplayFn& replay);
  absl::Status OpenActive(const std::string& name);
  absl::Status RollLocked();
  absl::Status WriteLocked(std::string_view key, std::string_view value);
  absl::Status SyncLocked();
  void CloseActiveLocked();
  void SyncLoop(std::stop_token stop);

  const Options options_;
  mutable std::mutex mu_;
  std::vector<std::string> segments_;
  uint64_t next_segment_ = 1;
  int fd_ = -1;
  uint64_t active_size_ = 0;
  bool dirty_ = false;

  std::condition_variable_any sync_cv_;
  std::jthread sync_thread_;
};

}  // namespace sentiflow::storage
