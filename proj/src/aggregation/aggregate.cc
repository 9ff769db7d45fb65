// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/aggregation/aggregate.h"

#include <map>
#include <mutex>
#include <thread>

#include "sentiflow/aggregation/match.h"

namespace sentiflow::aggregation {
namespace {

struct Partial {
  std::map<TimestampMs, Tuple> windows;
  int64_t skipped = 0;
  absl::Status status;
};

void ScanBuckets(const storage::PostStore& store, const Query& query,
                 const KeywordMatcher& matcher, int first, int stride, Partial& out) {
  for (int b = first; b < store.num_buckets(); b += stride) {
    auto it = store.ScanBucket(b, query.t_start, query.t_end);
    if (!it.ok()) {
      out.status = it.status();
      return;
    }
    for (auto& cursor = *it; cursor->Valid(); cursor->Next()) {
      const storage::PostRecord& post = cursor->record();
      if (!query.lang.empty() && post.lang != query.lang) continue;
      if (!matcher.Matches(post.text)) continue;
      if (!post.polarity.has_value()) {
        ++out.skipped;
        continue;
      }
      const TimestampMs w = query.t_start +
                            (post.created_at - query.t_start) / query.window_ms *
                                query.window_ms;
      out.windows[w].Add(*post.polarity);
    }
  }
}

}  // namespace

absl::StatusOr<AggregateResult> Aggregate(const storage::PostStore& store,
                                          const Query& query,
                                          AggregateOptions options) {
  if (absl::Status s = query.Validate(); !s.ok()) return s;
  const KeywordMatcher matcher(query.keyword);
  int scanners = options.scanners <= 0 ? store.num_buckets() : options.scanners;
  scanners = std::min(scanners, store.num_buckets());

  std::vector<Partial> partials(static_cast<size_t>(scanners));
  if (scanners == 1) {
    ScanBuckets(store, query, matcher, 0, 1, partials[0]);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(partials.size());
    for (int i = 0; i < scanners; ++i) {
      threads.emplace_back([&, i] {
        ScanBuckets(store, query, matcher, i, scanners, partials[static_cast<size_t>(i)]);
      });
    }
  }

  std::map<TimestampMs, Tuple> merged;
  AggregateResult result;
  for (const Partial& p : partials) {
    if (!p.status.ok()) return p.status;
    for (const auto& [w, t] : p.windows) merged[w] += t;
    result.skipped += p.skipped;
  }
  result.windows.reserve(merged.size());
  for (const auto& [w, t] : merged) {
    result.windows.push_back({w, t});
    result.totals += t;
  }
  return result;
}

AggregateFn MakeAggregateFn(const storage::PostStore& store, AggregateOptions options) {
  return [&store, options](const Query& q) { return Aggregate(store, q, options); };
}

}  // namespace sentiflow::aggregation
