// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "sentiflow/common/clock.h"

namespace sentiflow::harness {

// Milliseconds since the epoch, or an RFC 3339 time such as
// "2017-03-01T10:00:00Z" (fractional seconds and offsets allowed).
absl::StatusOr<TimestampMs> ParseTimestamp(std::string_view text);

// "2017-03-01T10:00:00.000Z"
std::string FormatTimestamp(TimestampMs ms);

}  // namespace sentiflow::harness
