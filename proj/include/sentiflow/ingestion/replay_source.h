// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "sentiflow/ingestion/post_source.h"

namespace sentiflow::ingestion {

// Replays a line-delimited JSON corpus, one RawPost per line:
//
//   {"source_id":"…","text":"…","lang":"en","created_at":1486166400000,
//    "author":"…"}            // author optional
//
// Posts come out in file order regardless of the term asked for. Lines that
// do not parse or fail validation are skipped and counted; blank lines are
// ignored.
class ReplaySource final : public PostSource {
 public:
  static absl::StatusOr<std::unique_ptr<ReplaySource>> Open(
      const std::filesystem::path& path, int per_call_cap = kDefaultPerCallCap);

  // Next per_call_cap posts; empty once exhausted.
  absl::StatusOr<std::vector<RawPost>> Fetch(std::string_view term) override;
  std::optional<RawPost> Next();

  bool exhausted() const;
  size_t size() const { return posts_.size(); }
  size_t malformed() const { return malformed_; }

 private:
  ReplaySource(std::vector<RawPost> posts, size_t malformed, int per_call_cap)
      : posts_(std::move(posts)), malformed_(malformed), cap_(per_call_cap) {}

  const std::vector<RawPost> posts_;
  const size_t malformed_;
  const int cap_;
  mutable std::mutex mu_;
  size_t pos_ = 0;
};

absl::Status WriteReplayFile(const std::filesystem::path& path,
                             std::span<const RawPost> posts);

}  // namespace sentiflow::ingestion
