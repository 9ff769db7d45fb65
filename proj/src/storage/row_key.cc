// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/storage/row_key.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace sentiflow::storage {
namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

uint64_t Fmix64(uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

void AppendPrefix(std::string* out, int bucket) {
  static constexpr char kHex[] = "0123456789abcdef";
  out->push_back(kHex[(bucket >> 4) & 0xf]);
  out->push_back(kHex[bucket & 0xf]);
}

void AppendBigEndian64(std::string* out, uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out->push_back(static_cast<char>((v >> shift) & 0xff));
  }
}

}  // namespace

uint64_t StableHash64(std::string_view bytes) {
  uint64_t h = kFnvOffset;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return Fmix64(h);
}

int AssignBucket(std::string_view post_id, int num_buckets) {
  if (num_buckets <= 1) return 0;
  return static_cast<int>(StableHash64(post_id) %
                          static_cast<uint64_t>(num_buckets));
}

absl::StatusOr<std::string> EncodeRowKey(const RowKey& key, int num_buckets) {
  if (num_buckets < 1 || num_buckets > kMaxBuckets) {
    return absl::InvalidArgumentError(
        absl::StrCat("num_buckets out of range: ", num_buckets));
  }
  if (key.bucket < 0 || key.bucket >= num_buckets) {
    return absl::InvalidArgumentError(absl::StrCat(
        "invalid key: bucket ", key.bucket, " not in [0, ", num_buckets, ")"));
  }
  if (key.timestamp_ms < 0) {
    return absl::InvalidArgumentError("invalid key: negative timestamp");
  }
  if (key.post_id.empty()) {
    return absl::InvalidArgumentError("invalid key: empty post_id");
  }
  std::string out;
  out.reserve(kRowKeyHeaderSize + key.post_id.size());
  AppendPrefix(&out, key.bucket);
  AppendBigEndian64(&out, static_cast<uint64_t>(key.timestamp_ms));
  out.append(key.post_id);
  return out;
}

absl::StatusOr<RowKey> DecodeRowKey(std::string_view bytes) {
  if (bytes.size() <= kRowKeyHeaderSize) {
    return absl::InvalidArgumentError("invalid key: too short");
  }
  const int hi = HexValue(bytes[0]);
  const int lo = HexValue(bytes[1]);
  if (hi < 0 || lo < 0) {
    return absl::InvalidArgumentError("invalid key: bad bucket prefix");
  }
  uint64_t ts = 0;
  for (size_t i = 0; i < kTimestampSize; ++i) {
    ts = (ts << 8) | static_cast<unsigned char>(bytes[kBucketPrefixSize + i]);
  }
  if (ts > static_cast<uint64_t>(INT64_MAX)) {
    return absl::InvalidArgumentError("invalid key: timestamp overflow");
  }
  RowKey key;
  key.bucket = hi * 16 + lo;
  key.timestamp_ms = static_cast<TimestampMs>(ts);
  key.post_id = std::string(bytes.substr(kRowKeyHeaderSize));
  return key;
}

std::string EncodeScanBound(int bucket, TimestampMs ts) {
  std::string out;
  out.reserve(kRowKeyHeaderSize);
  AppendPrefix(&out, bucket);
  AppendBigEndian64(&out, static_cast<uint64_t>(ts < 0 ? 0 : ts));
  return out;
}

std::string ToDebugString(const RowKey& key) {
  return absl::StrFormat("(%d, %d, %s)", key.bucket, key.timestamp_ms,
                         key.post_id);
}

}  // namespace sentiflow::storage
