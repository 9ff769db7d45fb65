// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sentiflow/sentiment/topology.h"
#include "sentiflow/storage/post_store.h"

namespace sentiflow::harness {

// Least-squares line y = slope * x + intercept.
struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};

// Needs at least two distinct x values.
absl::StatusOr<LinearFit> FitLine(std::span<const double> xs, std::span<const double> ys);

// True when every value is strictly below the previous one.
bool StrictlyDecreasing(std::span<const double> ys);

// Physical cores as seen by the process (hardware_concurrency, at least 1).
int CoreCount();

// Ingestion throughput of `threads` workers pulling a fixed-rate synthetic
// stream and ingesting it, one row per thread count.
struct IngestBenchOptions {
  double rate_per_s = 1000;
  double duration_s = 2;
  std::vector<int> threads = {1};
  uint64_t seed = 1;
  int num_buckets = 16;
};

struct IngestBenchRow {
  int threads = 0;
  uint64_t ingested = 0;
  double elapsed_s = 0;
  double posts_per_s = 0;
};

std::vector<IngestBenchRow> BenchIngest(const IngestBenchOptions& options);
std::string FormatIngestTable(const IngestBenchOptions& options,
                              std::span<const IngestBenchRow> rows);

// Share of a preloaded input set the topology classifies and stores within
// the time budget.
struct PipelineBenchOptions {
  std::vector<std::string> hints = {"1-1-1-1-1-1-1"};
  uint64_t posts = 10000;
  double duration_s = 10;
  uint64_t seed = 1;
  std::filesystem::path data_dir;  // language resources root
  std::filesystem::path train_path;
};

struct PipelineBenchRow {
  std::string hints;
  uint64_t posts = 0;
  uint64_t stored = 0;
  double elapsed_s = 0;  // until all stored or the budget ran out
  double completion_pct = 0;
};

absl::StatusOr<std::vector<PipelineBenchRow>> BenchPipeline(const PipelineBenchOptions& options);
std::string FormatPipelineTable(std::span<const PipelineBenchRow> rows);

// Aggregation latency over classified synthetic posts spread across one
// day: a size sweep (linear fit) and a scanner sweep at the largest size.
struct AggregateBenchOptions {
  std::vector<uint64_t> sizes = {20000, 40000, 60000, 80000, 100000};
  // Empty means 1..CoreCount().
  std::vector<int> scanners;
  // Timed runs per point after one warm-up run; the median is reported.
  int repeats = 9;
  int num_buckets = 16;
  // Concurrent identical queries per measurement.
  int parallel_queries = 1;
  uint64_t seed = 1;
  std::string keyword = "travel ban";
};

struct AggregateBenchPoint {
  uint64_t posts = 0;
  int scanners = 0;
  double median_ms = 0;
  int64_t matches = 0;
};

struct AggregateBenchReport {
  std::vector<AggregateBenchPoint> size_sweep;     // one scanner per bucket
  std::vector<AggregateBenchPoint> scanner_sweep;  // largest size
  LinearFit fit;                                   // median_ms over posts
  bool scanner_monotone = false;
  int cores = 1;

  nlohmann::json ToJson() const;
  std::string Format() const;
};

// Deterministic store of n classified posts for aggregation benchmarks.
std::unique_ptr<storage::PostStore> SyntheticClassifiedStore(uint64_t n, int num_buckets,
                                                             uint64_t seed);

absl::StatusOr<AggregateBenchReport> BenchAggregate(const AggregateBenchOptions& options);

}  // namespace sentiflow::harness
