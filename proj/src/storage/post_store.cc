// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/storage/post_store.h"

#include <mutex>
#include <queue>

#include "absl/strings/str_cat.h"
#include "sentiflow/common/status_macros.h"

namespace sentiflow::storage {

std::vector<PostRecord> Collect(PostIterator& it) {
  std::vector<PostRecord> out;
  for (; it.Valid(); it.Next()) out.push_back(it.record());
  return out;
}

class PostStore::BucketIterator final : public PostIterator {
 public:
  explicit BucketIterator(std::vector<RowPtr> rows) : rows_(std::move(rows)) {}

  bool Valid() const override { return pos_ < rows_.size(); }
  void Next() override { ++pos_; }
  const RowKey& key() const override { return rows_[pos_]->key; }
  const PostRecord& record() const override { return rows_[pos_]->record; }

 private:
  std::vector<RowPtr> rows_;
  size_t pos_ = 0;
};

// Min-heap over child cursors. Buckets are disjoint, and (created_at,
// post_id) is a total order since post ids are unique.
class PostStore::MergingIterator final : public PostIterator {
 public:
  explicit MergingIterator(std::vector<std::unique_ptr<PostIterator>> children)
      : children_(std::move(children)) {
    for (size_t i = 0; i < children_.size(); ++i) {
      if (children_[i]->Valid()) heap_.push(i);
    }
  }

  bool Valid() const override { return !heap_.empty(); }

  void Next() override {
    const size_t top = heap_.top();
    heap_.pop();
    children_[top]->Next();
    if (children_[top]->Valid()) heap_.push(top);
  }

  const RowKey& key() const override { return children_[heap_.top()]->key(); }
  const PostRecord& record() const override {
    return children_[heap_.top()]->record();
  }

 private:
  struct Later {
    const std::vector<std::unique_ptr<PostIterator>>* children;
    bool operator()(size_t a, size_t b) const {
      const RowKey& ka = (*children)[a]->key();
      const RowKey& kb = (*children)[b]->key();
      if (ka.timestamp_ms != kb.timestamp_ms) {
        return ka.timestamp_ms > kb.timestamp_ms;
      }
      return ka.post_id > kb.post_id;
    }
  };

  std::vector<std::unique_ptr<PostIterator>> children_;
  std::priority_queue<size_t, std::vector<size_t>, Later> heap_{
      Later{&children_}};
};

PostStore::PostStore(int num_buckets) : num_buckets_(num_buckets) {
  buckets_.reserve(num_buckets);
  for (int i = 0; i < num_buckets; ++i) {
    buckets_.push_back(std::make_unique<Bucket>());
  }
}

PostStore::~PostStore() {
  if (log_) (void)log_->Sync();
}

std::unique_ptr<PostStore> PostStore::InMemory(int num_buckets) {
  return std::unique_ptr<PostStore>(new PostStore(num_buckets));
}

absl::StatusOr<std::unique_ptr<PostStore>> PostStore::Open(
    StorageConfig config) {
  if (config.num_buckets < 1 || config.num_buckets > kMaxBuckets) {
    return absl::InvalidArgumentError(absl::StrCat(
        "num_buckets must be in [1, ", kMaxBuckets, "], got ",
        config.num_buckets));
  }
  std::unique_ptr<PostStore> store(new PostStore(config.num_buckets));
  if (config.data_dir.empty()) return store;

  SegmentLog::Options options;
  options.dir = config.data_dir;
  options.num_buckets = config.num_buckets;
  options.sync = config.sync;
  options.segment_bytes = config.segment_bytes;
  PostStore* raw = store.get();
  ASSIGN_OR_RETURN(store->log_,
                   SegmentLog::Open(options, [raw](std::string_view k,
                                                   std::string_view v) {
                     raw->ApplyReplay(k, v);
                   }));
  RETURN_IF_ERROR(store->replay_status_);
  return store;
}

void PostStore::ApplyReplay(std::string_view key, std::string_view value) {
  if (!replay_status_.ok()) return;
  auto decoded = DecodeRowKey(key);
  auto record = DecodePostRecord(value);
  if (!decoded.ok() || !record.ok() || decoded->bucket >= num_buckets_) {
    replay_status_ = absl::DataLossError("undecodable row in segment log");
    return;
  }
  Bucket& b = *buckets_[decoded->bucket];
  b.created_by_post[decoded->post_id] = decoded->timestamp_ms;
  b.rows[std::string(key)] = std::make_shared<const Row>(
      Row{std::move(*decoded), std::move(*record)});
}

RowKey PostStore::KeyFor(const PostRecord& record) const {
  return RowKey{AssignBucket(record.post_id, num_buckets_), record.created_at,
                record.post_id};
}

absl::StatusOr<RowKey> PostStore::Put(const PostRecord& record) {
  RETURN_IF_ERROR(ValidatePostRecord(record));
  RowKey key = KeyFor(record);
  ASSIGN_OR_RETURN(std::string encoded, EncodeRowKey(key, num_buckets_));
  Bucket& b = *buckets_[key.bucket];
  std::unique_lock lock(b.mu);
  if (b.rows.contains(encoded)) return key;
  if (log_) RETURN_IF_ERROR(log_->Append(encoded, EncodePostRecord(record)));
  b.created_by_post[record.post_id] = record.created_at;
  b.rows.emplace(std::move(encoded),
                 std::make_shared<const Row>(Row{key, record}));
  return key;
}

absl::StatusOr<PostRecord> PostStore::Get(const RowKey& key) const {
  ASSIGN_OR_RETURN(std::string encoded, EncodeRowKey(key, num_buckets_));
  const Bucket& b = *buckets_[key.bucket];
  std::shared_lock lock(b.mu);
  auto it = b.rows.find(encoded);
  if (it == b.rows.end()) {
    return absl::NotFoundError(absl::StrCat("no row ", ToDebugString(key)));
  }
  return it->second->record;
}

absl::StatusOr<RowKey> PostStore::FindKey(std::string_view post_id) const {
  if (post_id.empty()) return absl::InvalidArgumentError("empty post_id");
  const int bucket = AssignBucket(post_id, num_buckets_);
  const Bucket& b = *buckets_[bucket];
  std::shared_lock lock(b.mu);
  auto it = b.created_by_post.find(std::string(post_id));
  if (it == b.created_by_post.end()) {
    return absl::NotFoundError(absl::StrCat("unknown post ", std::string(post_id)));
  }
  return RowKey{bucket, it->second, std::string(post_id)};
}

absl::Status PostStore::Validate(int bucket, TimestampMs t_start,
                                 TimestampMs t_end) const {
  if (bucket < 0 || bucket >= num_buckets_) {
    return absl::InvalidArgumentError(
        absl::StrCat("bucket ", bucket, " not in [0, ", num_buckets_, ")"));
  }
  if (t_start > t_end) {
    return absl::OutOfRangeError(
        absl::StrCat("invalid range [", t_start, ", ", t_end, ")"));
  }
  return absl::OkStatus();
}

std::vector<PostStore::RowPtr> PostStore::Snapshot(int bucket,
                                                   TimestampMs t_start,
                                                   TimestampMs t_end) const {
  std::vector<RowPtr> rows;
  if (t_start >= t_end || t_end <= 0) return rows;
  const std::string lo = EncodeScanBound(bucket, t_start);
  const std::string hi = EncodeScanBound(bucket, t_end);
  const Bucket& b = *buckets_[bucket];
  std::shared_lock lock(b.mu);
  const auto end = b.rows.lower_bound(hi);
  for (auto it = b.rows.lower_bound(lo); it != end; ++it) {
    rows.push_back(it->second);
  }
  return rows;
}

absl::StatusOr<std::unique_ptr<PostIterator>> PostStore::ScanBucket(
    int bucket, TimestampMs t_start, TimestampMs t_end) const {
  RETURN_IF_ERROR(Validate(bucket, t_start, t_end));
  return std::make_unique<BucketIterator>(Snapshot(bucket, t_start, t_end));
}

absl::StatusOr<std::unique_ptr<PostIterator>> PostStore::ScanRange(
    TimestampMs t_start, TimestampMs t_end) const {
  RETURN_IF_ERROR(Validate(0, t_start, t_end));
  std::vector<std::unique_ptr<PostIterator>> children;
  children.reserve(num_buckets_);
  for (int b = 0; b < num_buckets_; ++b) {
    children.push_back(
        std::make_unique<BucketIterator>(Snapshot(b, t_start, t_end)));
  }
  return std::make_unique<MergingIterator>(std::move(children));
}

absl::Status PostStore::UpdatePolarity(const RowKey& key, int polarity,
                                       TimestampMs classified_at) {
  if (!IsValidPolarity(polarity)) {
    return absl::InvalidArgumentError(
        absl::StrCat("polarity ", polarity, " outside {-1, 0, 1}"));
  }
  ASSIGN_OR_RETURN(std::string encoded, EncodeRowKey(key, num_buckets_));
  Bucket& b = *buckets_[key.bucket];
  std::unique_lock lock(b.mu);
  auto it = b.rows.find(encoded);
  if (it == b.rows.end()) {
    return absl::NotFoundError(absl::StrCat("no row ", ToDebugString(key)));
  }
  Row updated = *it->second;
  updated.record.polarity = polarity;
  updated.record.classified_at = classified_at;
  if (log_) RETURN_IF_ERROR(log_->Append(encoded, EncodePostRecord(updated.record)));
  it->second = std::make_shared<const Row>(std::move(updated));
  return absl::OkStatus();
}

absl::Status PostStore::Flush() {
  if (!log_) return absl::OkStatus();
  return log_->Sync();
}

absl::Status PostStore::Compact() {
  if (!log_) return absl::OkStatus();
  std::vector<std::unique_lock<std::shared_mutex>> locks;
  locks.reserve(buckets_.size());
  for (auto& b : buckets_) locks.emplace_back(b->mu);
  return log_->Rewrite([this](const SegmentLog::EmitFn& emit) {
    for (const auto& b : buckets_) {
      for (const auto& [key, row] : b->rows) {
        RETURN_IF_ERROR(emit(key, EncodePostRecord(row->record)));
      }
    }
    return absl::OkStatus();
  });
}

size_t PostStore::size() const {
  size_t n = 0;
  for (const auto& b : buckets_) {
    std::shared_lock lock(b->mu);
    n += b->rows.size();
  }
  return n;
}

std::vector<size_t> PostStore::bucket_sizes() const {
  std::vector<size_t> sizes;
  sizes.reserve(buckets_.size());
  for (const auto& b : buckets_) {
    std::shared_lock lock(b->mu);
    sizes.push_back(b->rows.size());
  }
  return sizes;
}

}  // namespace sentiflow::storage
