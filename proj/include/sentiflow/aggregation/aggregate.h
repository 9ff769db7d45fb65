// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <functional>

#include "absl/status/statusor.h"
#include "sentiflow/aggregation/query.h"
#include "sentiflow/storage/post_store.h"

namespace sentiflow::aggregation {

struct AggregateOptions {
  // Concurrent bucket scanners; 0 means one per bucket. Clamped to the
  // bucket count.
  int scanners = 0;
};

// Scans every bucket over [t_start, t_end), keeps posts in the query
// language whose text matches the keyword, and sums their tuples per
// window. Buckets are split round-robin between scanner threads and the
// partial sums merged at the end.
absl::StatusOr<AggregateResult> Aggregate(const storage::PostStore& store,
                                          const Query& query,
                                          AggregateOptions options = {});

using AggregateFn = std::function<absl::StatusOr<AggregateResult>(const Query&)>;

AggregateFn MakeAggregateFn(const storage::PostStore& store,
                            AggregateOptions options = {});

}  // namespace sentiflow::aggregation
