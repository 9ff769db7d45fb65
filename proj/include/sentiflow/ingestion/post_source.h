// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "sentiflow/common/clock.h"

namespace sentiflow::ingestion {

// Default per-term sample shape of a search-style source: about 20 posts
// per term, and the same sample for repeated queries inside 20 seconds.
inline constexpr int kDefaultPerCallCap = 20;
inline constexpr int64_t kDefaultMinRecallIntervalS = 20;

struct RawPost {
  std::string source_id;
  std::string text;
  std::string lang;
  TimestampMs created_at = 0;
  std::optional<std::string> author;

  friend bool operator==(const RawPost&, const RawPost&) = default;
};

absl::Status ValidateRawPost(const RawPost& post);

// One line of a replay file.
nlohmann::json RawPostToJson(const RawPost& post);
absl::StatusOr<RawPost> RawPostFromJson(const nlohmann::json& j);

// A place posts come from. Implementations must be thread-safe: spiders
// share one source.
class PostSource {
 public:
  virtual ~PostSource() = default;
  // Up to per-call-cap posts matching `term`.
  virtual absl::StatusOr<std::vector<RawPost>> Fetch(std::string_view term) = 0;
};

}  // namespace sentiflow::ingestion
