// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/aggregation/query.h"

#include "absl/strings/str_cat.h"
#include "sentiflow/aggregation/match.h"

namespace sentiflow::aggregation {

std::string_view QueryModeName(QueryMode mode) {
  return mode == QueryMode::kAutomated ? "automated" : "ondemand";
}

absl::StatusOr<QueryMode> ParseQueryMode(std::string_view name) {
  if (name == "automated") return QueryMode::kAutomated;
  if (name == "ondemand") return QueryMode::kOnDemand;
  return absl::InvalidArgumentError(absl::StrCat("unknown mode '", std::string(name), "'"));
}

absl::Status Query::Validate() const {
  if (KeywordMatcher(keyword).empty()) {
    return absl::InvalidArgumentError("keyword must contain at least one word");
  }
  if (t_start >= t_end) {
    return absl::InvalidArgumentError("t_start must be before t_end");
  }
  if (window_ms <= 0) return absl::InvalidArgumentError("window_ms must be positive");
  if (window_ms > t_end - t_start) {
    return absl::InvalidArgumentError("window_ms is longer than the interval");
  }
  return absl::OkStatus();
}

nlohmann::json QueryToJson(const Query& q) {
  return {{"keyword", q.keyword},     {"t_start", q.t_start},
          {"t_end", q.t_end},         {"lang", q.lang},
          {"window_ms", q.window_ms}, {"mode", QueryModeName(q.mode)}};
}

absl::StatusOr<Query> QueryFromJson(const nlohmann::json& j) {
  if (!j.is_object()) return absl::InvalidArgumentError("query must be an object");
  try {
    Query q;
    q.keyword = j.at("keyword").get<std::string>();
    q.t_start = j.at("t_start").get<TimestampMs>();
    q.t_end = j.at("t_end").get<TimestampMs>();
    q.window_ms = j.at("window_ms").get<int64_t>();
    if (j.contains("lang")) q.lang = j.at("lang").get<std::string>();
    if (j.contains("mode")) {
      auto mode = ParseQueryMode(j.at("mode").get<std::string>());
      if (!mode.ok()) return mode.status();
      q.mode = *mode;
    }
    return q;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad query: ", e.what()));
  }
}

std::optional<double> WindowAggregate::ap() const {
  if (tuple.matches == 0) return std::nullopt;
  return (static_cast<double>(tuple.polarity_sum) / static_cast<double>(tuple.matches) +
          1.0) / 2.0;
}

double WindowAggregate::pos_ratio() const {
  return tuple.matches == 0 ? 0.0
                            : static_cast<double>(tuple.positives) /
                                  static_cast<double>(tuple.matches);
}

double WindowAggregate::neg_ratio() const {
  return tuple.matches == 0 ? 0.0
                            : static_cast<double>(tuple.negatives) /
                                  static_cast<double>(tuple.matches);
}

double WindowAggregate::neutral_ratio() const {
  return tuple.matches == 0 ? 0.0
                            : static_cast<double>(neutral()) /
                                  static_cast<double>(tuple.matches);
}

nlohmann::json WindowToJson(const WindowAggregate& w) {
  nlohmann::json j = {{"window_start", w.window_start},
                      {"polarity_sum", w.tuple.polarity_sum},
                      {"matches", w.tuple.matches},
                      {"positives", w.tuple.positives},
                      {"negatives", w.tuple.negatives},
                      {"neutral", w.neutral()},
                      {"pos_ratio", w.pos_ratio()},
                      {"neg_ratio", w.neg_ratio()},
                      {"neutral_ratio", w.neutral_ratio()}};
  if (auto ap = w.ap()) j["ap"] = *ap;
  return j;
}

absl::StatusOr<WindowAggregate> WindowFromJson(const nlohmann::json& j) {
  try {
    WindowAggregate w;
    w.window_start = j.at("window_start").get<TimestampMs>();
    w.tuple.polarity_sum = j.at("polarity_sum").get<int64_t>();
    w.tuple.matches = j.at("matches").get<int64_t>();
    w.tuple.positives = j.at("positives").get<int64_t>();
    w.tuple.negatives = j.at("negatives").get<int64_t>();
    return w;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad window: ", e.what()));
  }
}

nlohmann::json ResultToJson(const AggregateResult& r) {
  nlohmann::json windows = nlohmann::json::array();
  for (const auto& w : r.windows) windows.push_back(WindowToJson(w));
  WindowAggregate totals{0, r.totals};
  nlohmann::json t = WindowToJson(totals);
  t.erase("window_start");
  return {{"windows", std::move(windows)}, {"totals", std::move(t)}, {"skipped", r.skipped}};
}

absl::StatusOr<TimestampMs> WindowOf(TimestampMs created_at, TimestampMs t_start,
                                     TimestampMs t_end, int64_t window_ms) {
  if (window_ms <= 0) return absl::InvalidArgumentError("window_ms must be positive");
  if (created_at < t_start || created_at >= t_end) {
    return absl::OutOfRangeError(absl::StrCat("timestamp ", created_at,
                                              " outside [", t_start, ", ", t_end, ")"));
  }
  return t_start + (created_at - t_start) / window_ms * window_ms;
}

}  // namespace sentiflow::aggregation
