// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/harness/time_arg.h"

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/time/time.h"

namespace sentiflow::harness {

absl::StatusOr<TimestampMs> ParseTimestamp(std::string_view text) {
  const std::string s(text);
  int64_t ms = 0;
  if (absl::SimpleAtoi(s, &ms)) return ms;
  absl::Time t;
  std::string err;
  if (!absl::ParseTime(absl::RFC3339_full, s, &t, &err)) {
    return absl::InvalidArgumentError(absl::StrCat("bad timestamp '", s, "': ", err));
  }
  return absl::ToUnixMillis(t);
}

std::string FormatTimestamp(TimestampMs ms) {
  return absl::FormatTime("%Y-%m-%dT%H:%M:%E3SZ", absl::FromUnixMillis(ms), absl::UTCTimeZone());
}

}  // namespace sentiflow::harness
