// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "sentiflow/storage/post_record.h"
#include "sentiflow/storage/row_key.h"
#include "sentiflow/storage/segment_log.h"

namespace sentiflow::storage {

struct StorageConfig {
  int num_buckets = 16;
  // Empty path keeps the store purely in memory.
  std::filesystem::path data_dir;
  SyncPolicy sync;
  uint64_t segment_bytes = 64ull << 20;
};

// Forward-only cursor over a snapshot taken when the cursor was created.
class PostIterator {
 public:
  virtual ~PostIterator() = default;
  virtual bool Valid() const = 0;
  virtual void Next() = 0;
  virtual const RowKey& key() const = 0;
  virtual const PostRecord& record() const = 0;
};

std::vector<PostRecord> Collect(PostIterator& it);

// The write-back surface the polarity storer needs.
class PolarityWriter {
 public:
  virtual ~PolarityWriter() = default;
  virtual absl::Status UpdatePolarity(const RowKey& key, int polarity,
                                      TimestampMs classified_at) = 0;
};

// Embedded ordered store for posts. Rows live in one ordered map per bucket
// keyed by the encoded RowKey; every mutation is appended to a SegmentLog
// first when the store is durable.
//
// Thread-safe. Scans copy row handles under a shared bucket lock, so a
// cursor sees the bucket as it was at creation and rows are never mutated
// after being published.
class PostStore : public PolarityWriter {
 public:
  static absl::StatusOr<std::unique_ptr<PostStore>> Open(StorageConfig config);
  static std::unique_ptr<PostStore> InMemory(int num_buckets);

  ~PostStore() override;

  // Idempotent: storing an existing key is a no-op returning that key.
  absl::StatusOr<RowKey> Put(const PostRecord& record);
  absl::StatusOr<PostRecord> Get(const RowKey& key) const;
  // Resolves an internal post id to its row key.
  absl::StatusOr<RowKey> FindKey(std::string_view post_id) const;

  // Rows of one bucket with created_at in [t_start, t_end), key order.
  absl::StatusOr<std::unique_ptr<PostIterator>> ScanBucket(
      int bucket, TimestampMs t_start, TimestampMs t_end) const;
  // k-way merge of every bucket scan; ordered by (created_at, post_id).
  absl::StatusOr<std::unique_ptr<PostIterator>> ScanRange(
      TimestampMs t_start, TimestampMs t_end) const;

  absl::Status UpdatePolarity(const RowKey& key, int polarity,
                              TimestampMs classified_at) override;

  absl::Status Flush();
  // Rewrites the segment log to hold only live rows.
  absl::Status Compact();

  RowKey KeyFor(const PostRecord& record) const;
  int num_buckets() const { return num_buckets_; }
  size_t size() const;
  std::vector<size_t> bucket_sizes() const;

 private:
  struct Row {
    RowKey key;
    PostRecord record;
  };
  using RowPtr = std::shared_ptr<const Row>;

  struct Bucket {
    mutable std::shared_mutex mu;
    std::map<std::string, RowPtr> rows;
    std::unordered_map<std::string, TimestampMs> created_by_post;
  };

  class BucketIterator;
  class MergingIterator;

  explicit PostStore(int num_buckets);

  void ApplyReplay(std::string_view key, std::string_view value);
  absl::Status Validate(int bucket, TimestampMs t_start, TimestampMs t_end) const;
  std::vector<RowPtr> Snapshot(int bucket, TimestampMs t_start,
                               TimestampMs t_end) const;

  const int num_buckets_;
  std::vector<std::unique_ptr<Bucket>> buckets_;
  std::unique_ptr<SegmentLog> log_;
  absl::Status replay_status_;
};

}  // namespace sentiflow::storage
