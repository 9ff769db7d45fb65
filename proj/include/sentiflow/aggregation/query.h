// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sentiflow/common/clock.h"

namespace sentiflow::aggregation {

enum class QueryMode { kAutomated, kOnDemand };

std::string_view QueryModeName(QueryMode mode);
absl::StatusOr<QueryMode> ParseQueryMode(std::string_view name);

struct Query {
  std::string keyword;
  TimestampMs t_start = 0;
  TimestampMs t_end = 0;
  std::string lang = "en";  // empty matches every language
  int64_t window_ms = 0;
  QueryMode mode = QueryMode::kOnDemand;

  // keyword has at least one word; t_start < t_end;
  // 0 < window_ms <= t_end - t_start.
  absl::Status Validate() const;
};

nlohmann::json QueryToJson(const Query& q);
// Missing lang defaults to "en", missing mode to ondemand. Does not
// validate ranges.
absl::StatusOr<Query> QueryFromJson(const nlohmann::json& j);

// The per-post value tuple: (polarity, 1, [polarity = 1], [polarity = -1]).
struct Tuple {
  int64_t polarity_sum = 0;
  int64_t matches = 0;
  int64_t positives = 0;
  int64_t negatives = 0;

  void Add(int polarity) {
    polarity_sum += polarity;
    ++matches;
    positives += polarity == 1;
    negatives += polarity == -1;
  }
  Tuple& operator+=(const Tuple& o) {
    polarity_sum += o.polarity_sum;
    matches += o.matches;
    positives += o.positives;
    negatives += o.negatives;
    return *this;
  }
  bool operator==(const Tuple&) const = default;
};

struct WindowAggregate {
  TimestampMs window_start = 0;
  Tuple tuple;

  int64_t neutral() const { return tuple.matches - tuple.positives - tuple.negatives; }
  // (polarity_sum / matches + 1) / 2; absent when matches = 0.
  std::optional<double> ap() const;
  double pos_ratio() const;
  double neg_ratio() const;
  double neutral_ratio() const;

  bool operator==(const WindowAggregate&) const = default;
};

nlohmann::json WindowToJson(const WindowAggregate& w);
absl::StatusOr<WindowAggregate> WindowFromJson(const nlohmann::json& j);

struct AggregateResult {
  // Windows with at least one match, by window_start.
  std::vector<WindowAggregate> windows;
  Tuple totals;
  // Matching posts in range that have no polarity yet.
  int64_t skipped = 0;
};

nlohmann::json ResultToJson(const AggregateResult& r);

// Start of the half-open window [w, w + window_ms) holding created_at.
// OutOfRange unless t_start <= created_at < t_end.
absl::StatusOr<TimestampMs> WindowOf(TimestampMs created_at, TimestampMs t_start,
                                     TimestampMs t_end, int64_t window_ms);

}  // namespace sentiflow::aggregation
