// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "sentiflow/common/clock.h"

namespace sentiflow::storage {

// The bucket prefix is two lowercase hex characters.
inline constexpr int kMaxBuckets = 256;
inline constexpr size_t kBucketPrefixSize = 2;
inline constexpr size_t kTimestampSize = 8;
inline constexpr size_t kRowKeyHeaderSize = kBucketPrefixSize + kTimestampSize;

// Bucket-salted chronological key. Byte encoding sorts exactly like the
// (bucket, timestamp_ms, post_id) tuple.
struct RowKey {
  int bucket = 0;
  TimestampMs timestamp_ms = 0;
  std::string post_id;

  friend auto operator<=>(const RowKey&, const RowKey&) = default;
  friend bool operator==(const RowKey&, const RowKey&) = default;
};

// Seedless 64-bit hash: FNV-1a 64 over the bytes, then the MurmurHash3
// fmix64 finalizer. Stable across platforms and processes.
uint64_t StableHash64(std::string_view bytes);

// StableHash64(post_id) mod num_buckets. Requires num_buckets >= 1.
int AssignBucket(std::string_view post_id, int num_buckets);

// Layout: "%02x" bucket, 8-byte big-endian timestamp, raw post_id bytes.
absl::StatusOr<std::string> EncodeRowKey(const RowKey& key, int num_buckets);
absl::StatusOr<RowKey> DecodeRowKey(std::string_view bytes);

// Smallest encoded key of `bucket` with timestamp >= ts.
std::string EncodeScanBound(int bucket, TimestampMs ts);

std::string ToDebugString(const RowKey& key);

}  // namespace sentiflow::storage
