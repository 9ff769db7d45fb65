// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "sentiflow/common/clock.h"

namespace sentiflow::buffer {

// Value stored in the classifier input set, keyed by post_id.
struct InputMessage {
  std::string post_id;
  std::string lang;
  std::string text;
  TimestampMs created_at = 0;
};

// Value stored in the classifier output set, keyed by post_id. created_at
// lets the storer rebuild the row key without a lookup.
struct OutputMessage {
  std::string post_id;
  TimestampMs created_at = 0;
  int polarity = 0;
  TimestampMs classified_at = 0;
  bool flagged = false;  // stage failure, polarity forced to 0
};

std::string EncodeInput(const InputMessage& m);
absl::StatusOr<InputMessage> DecodeInput(std::string_view bytes);
std::string EncodeOutput(const OutputMessage& m);
absl::StatusOr<OutputMessage> DecodeOutput(std::string_view bytes);

}  // namespace sentiflow::buffer
