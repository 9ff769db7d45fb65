// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "sentiflow/common/clock.h"

namespace sentiflow::storage {

// One stored post. polarity and classified_at stay empty until the
// polarity storer writes them back.
struct PostRecord {
  std::string post_id;    // internal, unique
  std::string source_id;  // identifier at the origin
  std::string text;
  std::string lang;  // ISO 639-1
  TimestampMs created_at = 0;
  std::optional<std::string> author;
  std::optional<int> polarity;  // -1, 0 or 1
  std::optional<TimestampMs> classified_at;

  friend bool operator==(const PostRecord&, const PostRecord&) = default;
};

inline bool IsValidPolarity(int p) { return p >= -1 && p <= 1; }

absl::Status ValidatePostRecord(const PostRecord& record);

// Compact length-prefixed binary form used by the segment log.
std::string EncodePostRecord(const PostRecord& record);
absl::StatusOr<PostRecord> DecodePostRecord(std::string_view bytes);

void to_json(nlohmann::json& j, const PostRecord& record);
void from_json(const nlohmann::json& j, PostRecord& record);

}  // namespace sentiflow::storage
