// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "sentiflow/ingestion/post_source.h"

namespace sentiflow::ingestion {

struct SyntheticOptions {
  uint64_t seed = 1;
  double rate_per_s = 100;
  // Topic terms; every generated post mentions one of them. Defaults to
  // DefaultTopics() when empty.
  std::vector<std::string> vocab;
  // -1 all negative, 0 balanced three ways, 1 all positive.
  double sentiment_bias = 0;
  int per_call_cap = kDefaultPerCallCap;
  int64_t min_recall_interval_s = kDefaultMinRecallIntervalS;
  std::string lang = "en";
  // Creation time of stream post 0; the clock's time at construction when 0.
  TimestampMs start_ms = 0;
};

// Deterministic generator standing in for a live microblog feed.
//
// Two views of the same seeded generator:
//  - Fetch(term) behaves like a search endpoint: a sample of up to
//    per_call_cap posts mentioning the term, identical for every call
//    inside the same min_recall_interval_s window.
//  - TakeDue() is a constant-rate stream: post k is created at
//    start + floor(k * 1000 / rate) and becomes due once that instant is in
//    the past.
//
// Positive posts always carry at least one positive-lexicon word, negative
// posts a negative word or a negated positive word, neutral posts neither.
class SyntheticSource final : public PostSource {
 public:
  SyntheticSource(SyntheticOptions options, const Clock* clock);

  absl::StatusOr<std::vector<RawPost>> Fetch(std::string_view term) override;

  std::vector<RawPost> TakeDue();
  // Post `index` of the rate stream.
  RawPost Generate(uint64_t index) const;
  uint64_t emitted() const;

  // Label the generator intended for a post built with these options.
  static int IntendedPolarity(uint64_t seed, double bias, uint64_t stream_key);

  static std::span<const std::string_view> PositiveWords();
  static std::span<const std::string_view> NegativeWords();
  static const std::vector<std::string>& DefaultTopics();

 private:
  RawPost Build(uint64_t stream_key, std::string_view topic, std::string source_id,
                TimestampMs created_at) const;

  SyntheticOptions options_;
  const Clock* clock_;
  mutable std::mutex mu_;
  uint64_t next_index_ = 0;
};

}  // namespace sentiflow::ingestion
