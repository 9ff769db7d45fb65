// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/status.h"
#include "sentiflow/common/clock.h"

namespace sentiflow::buffer {

// Two days, the lifetime of a crawler dedup mark.
inline constexpr int64_t kDefaultDedupTtlS = 172800;

inline constexpr char kDedupSet[] = "dedup";
inline constexpr char kInputSet[] = "input";
inline constexpr char kOutputSet[] = "output";

struct BufferRecord {
  std::string key;
  std::string value;
  TimestampMs inserted_at = 0;
  int64_t ttl_s = 0;  // 0 = no expiry

  // Invisible to every read once inserted_at + ttl_s * 1000 < now.
  bool ExpiredAt(TimestampMs now) const {
    return ttl_s > 0 && inserted_at + ttl_s * kMsPerSecond < now;
  }
};

// In-memory named sets with per-record TTL and lease-based delivery.
//
// Polled records are leased: invisible to other pollers until the lease
// runs out, then handed out again unless acked first. Delivery is therefore
// at-least-once, and a record is never held by two pollers under live
// leases. All operations are atomic per record and thread-safe; sets are
// created on first use.
class BufferStore {
 public:
  explicit BufferStore(const Clock* clock = SystemClock::Default());
  ~BufferStore();

  BufferStore(const BufferStore&) = delete;
  BufferStore& operator=(const BufferStore&) = delete;

  // False iff a live record with `key` already exists. Expired records do
  // not block insertion.
  bool PutIfAbsent(std::string_view set, std::string_view key,
                   std::string value, int64_t ttl_s);

  // Inserts or overwrites. An overwrite drops any outstanding lease on the
  // key and makes the new value pollable.
  void Enqueue(std::string_view set, std::string_view key, std::string value,
               int64_t ttl_s = 0);

  // Up to max_n live, unleased records in FIFO order (redeliveries first),
  // each leased for lease_s seconds.
  std::vector<BufferRecord> PollBatch(std::string_view set, size_t max_n,
                                      int64_t lease_s);

  // Removes records permanently; unknown keys are ignored.
  void Ack(std::string_view set, std::span<const std::string> keys);
  void Ack(std::string_view set, std::string_view key);

  // Gives leased records back before their lease runs out; they are the
  // next ones polled. Unleased or unknown keys are ignored.
  void Release(std::string_view set, std::span<const std::string> keys);

  // Drops every record past its TTL, across all sets.
  size_t SweepExpired(TimestampMs now);

  std::optional<BufferRecord> Get(std::string_view set,
                                  std::string_view key) const;
  // Live records in the set, leased or not.
  size_t Size(std::string_view set) const;
  size_t LeasedCount(std::string_view set) const;

  // Snapshot of every live record (leases are not persisted: restored
  // records are immediately pollable).
  absl::Status SaveSnapshot(const std::filesystem::path& path) const;
  absl::Status LoadSnapshot(const std::filesystem::path& path);

  const Clock& clock() const { return *clock_; }

 private:
  static constexpr TimestampMs kUnleased = -1;

  struct Entry {
    BufferRecord record;
    uint64_t generation = 0;
    TimestampMs lease_until = kUnleased;
  };

  struct Lease {
    TimestampMs until;
    std::string key;
    uint64_t generation;
    bool operator>(const Lease& o) const { return until > o.until; }
  };

  struct NamedSet {
    mutable std::mutex mu;
    std::unordered_map<std::string, Entry> entries;
    std::deque<std::pair<std::string, uint64_t>> ready;
    std::priority_queue<Lease, std::vector<Lease>, std::greater<>> leases;
    uint64_t next_generation = 1;
  };

  NamedSet& GetOrCreate(std::string_view name);
  const NamedSet* Find(std::string_view name) const;
  static void ReleaseLeases(NamedSet& set, TimestampMs now);
  static void InsertLocked(NamedSet& set, std::string_view key,
                           BufferRecord record);

  const Clock* clock_;
  mutable std::shared_mutex sets_mu_;
  std::map<std::string, std::unique_ptr<NamedSet>, std::less<>> sets_;
};

}  // namespace sentiflow::buffer
