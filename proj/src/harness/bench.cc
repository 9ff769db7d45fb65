// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/harness/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "absl/strings/str_format.h"
#include "sentiflow/aggregation/aggregate.h"
#include "sentiflow/buffer/buffer_store.h"
#include "sentiflow/ingestion/ingestor.h"
#include "sentiflow/ingestion/synthetic_source.h"
#include "sentiflow/storer/polarity_storer.h"

namespace sentiflow::harness {
namespace {

using Seconds = std::chrono::duration<double>;

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

constexpr TimestampMs kBenchStart = 1'488'326'400'000;  // 2017-03-01T00:00:00Z
constexpr int64_t kDayMs = 86'400'000;

}  // namespace

absl::StatusOr<LinearFit> FitLine(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    return absl::InvalidArgumentError("need at least two paired points");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0) return absl::InvalidArgumentError("x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.slope * xs[i] + fit.intercept);
    ss_res += e * e;
  }
  fit.r2 = syy == 0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

bool StrictlyDecreasing(std::span<const double> ys) {
  for (size_t i = 1; i < ys.size(); ++i) {
    if (!(ys[i] < ys[i - 1])) return false;
  }
  return true;
}

int CoreCount() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<IngestBenchRow> BenchIngest(const IngestBenchOptions& options) {
  std::vector<IngestBenchRow> rows;
  for (int threads : options.threads) {
    auto store = storage::PostStore::InMemory(options.num_buckets);
    buffer::BufferStore buffers;
    ingestion::IngestOptions ingest;
    ingest.run_nonce = absl::StrFormat("b%d", threads);
    ingestion::Ingestor ingestor(*store, buffers, ingest);
    ingestion::SyntheticOptions synth;
    synth.seed = options.seed;
    synth.rate_per_s = options.rate_per_s;
    ingestion::SyntheticSource source(synth, SystemClock::Default());

    std::atomic<uint64_t> ingested{0};
    const auto start = std::chrono::steady_clock::now();
    const auto deadline = start + Seconds(options.duration_s);
    {
      std::vector<std::jthread> workers;
      for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
          while (std::chrono::steady_clock::now() < deadline) {
            std::vector<ingestion::RawPost> due = source.TakeDue();
            if (due.empty()) {
              std::this_thread::sleep_for(std::chrono::milliseconds(1));
              continue;
            }
            for (const auto& post : due) {
              auto outcome = ingestor.Ingest(post);
              if (outcome.ok() && outcome->status == ingestion::IngestStatus::kIngested) {
                ++ingested;
              }
            }
          }
        });
      }
    }
    IngestBenchRow row;
    row.threads = threads;
    row.ingested = ingested.load();
    row.elapsed_s = Seconds(std::chrono::steady_clock::now() - start).count();
    row.posts_per_s = static_cast<double>(row.ingested) / row.elapsed_s;
    rows.push_back(row);
  }
  return rows;
}

std::string FormatIngestTable(const IngestBenchOptions& options,
                              std::span<const IngestBenchRow> rows) {
  std::string out = absl::StrFormat("configured rate: %.1f posts/s, duration %.1f s\n",
                                    options.rate_per_s, options.duration_s);
  out += absl::StrFormat("%-8s %10s %10s %12s\n", "threads", "ingested", "elapsed_s",
                         "posts_per_s");
  for (const auto& r : rows) {
    out += absl::StrFormat("%-8d %10d %10.2f %12.1f\n", r.threads, r.ingested, r.elapsed_s,
                           r.posts_per_s);
  }
  return out;
}

absl::StatusOr<std::vector<PipelineBenchRow>> BenchPipeline(
    const PipelineBenchOptions& options) {
  auto pack = sentiment::LoadLanguagePack(options.data_dir, "en", "", options.train_path);
  if (!pack.ok()) return pack.status();
  sentiment::LanguagePacks packs = {{"en", *pack}};

  ingestion::SyntheticOptions synth;
  synth.seed = options.seed;
  synth.rate_per_s = 1000;
  synth.start_ms = kBenchStart;
  ManualClock synth_clock(kBenchStart);
  ingestion::SyntheticSource source(synth, &synth_clock);

  std::vector<PipelineBenchRow> rows;
  for (const std::string& text : options.hints) {
    sentiment::TopologyConfig config;
    auto hints = sentiment::ParseHints(text);
    if (!hints.ok()) return hints.status();
    config.hints = *hints;

    auto store = storage::PostStore::InMemory(16);
    buffer::BufferStore buffers;
    ingestion::IngestOptions ingest;
    ingest.run_nonce = "bench";
    ingestion::Ingestor ingestor(*store, buffers, ingest);
    for (uint64_t i = 0; i < options.posts; ++i) {
      auto outcome = ingestor.Ingest(source.Generate(i));
      if (!outcome.ok()) return outcome.status();
    }

    storer::PolarityStorer storer(buffers, *store, store->num_buckets(),
                                  {.batch_size = 2048, .poll_interval_ms = 20});
    const auto start = std::chrono::steady_clock::now();
    const auto deadline = start + Seconds(options.duration_s);
    auto topology = sentiment::Topology::Start(config, packs, buffers);
    if (!topology.ok()) return topology.status();
    storer.Start();
    while (std::chrono::steady_clock::now() < deadline &&
           storer.stats().drained_total < options.posts) {
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    PipelineBenchRow row;
    row.hints = text;
    row.posts = options.posts;
    row.stored = storer.stats().drained_total;
    row.elapsed_s = Seconds(std::chrono::steady_clock::now() - start).count();
    row.completion_pct =
        options.posts == 0 ? 100.0 : 100.0 * static_cast<double>(row.stored) / options.posts;
    (*topology)->Kill();
    storer.Stop();
    rows.push_back(row);
  }
  return rows;
}

std::string FormatPipelineTable(std::span<const PipelineBenchRow> rows) {
  std::string out = absl::StrFormat("%-16s %8s %8s %10s %12s\n", "hints", "posts", "stored",
                                    "elapsed_s", "completion_%");
  for (const auto& r : rows) {
    out += absl::StrFormat("%-16s %8d %8d %10.2f %12.2f\n", r.hints, r.posts, r.stored,
                           r.elapsed_s, r.completion_pct);
  }
  return out;
}

std::unique_ptr<storage::PostStore> SyntheticClassifiedStore(uint64_t n, int num_buckets,
                                                             uint64_t seed) {
  auto store = storage::PostStore::InMemory(num_buckets);
  if (n == 0) return store;
  ingestion::SyntheticOptions synth;
  synth.seed = seed;
  synth.rate_per_s = static_cast<double>(n) * 1000.0 / kDayMs;
  synth.start_ms = kBenchStart;
  ManualClock clock(kBenchStart);
  ingestion::SyntheticSource source(synth, &clock);
  for (uint64_t i = 0; i < n; ++i) {
    const ingestion::RawPost raw = source.Generate(i);
    storage::PostRecord r;
    r.post_id = absl::StrFormat("bench-%d", i);
    r.source_id = raw.source_id;
    r.text = raw.text;
    r.lang = raw.lang;
    r.created_at = raw.created_at;
    r.polarity = ingestion::SyntheticSource::IntendedPolarity(seed, 0, i);
    r.classified_at = raw.created_at;
    store->Put(r).IgnoreError();
  }
  return store;
}

absl::StatusOr<AggregateBenchReport> BenchAggregate(const AggregateBenchOptions& options) {
  if (options.repeats < 1 || options.parallel_queries < 1) {
    return absl::InvalidArgumentError("repeats and parallel_queries must be >= 1");
  }
  AggregateBenchReport report;
  report.cores = CoreCount();
  std::vector<int> scanners = options.scanners;
  if (scanners.empty()) {
    for (int s = 1; s <= report.cores; ++s) scanners.push_back(s);
  }
  const aggregation::Query query{options.keyword, kBenchStart, kBenchStart + kDayMs, "en",
                                 3'600'000, aggregation::QueryMode::kOnDemand};

  auto measure = [&](const storage::PostStore& store, int scanner_count,
                     AggregateBenchPoint& point) -> absl::Status {
    // One untimed pass so the first sample does not pay for cold pages.
    if (auto warm = aggregation::Aggregate(store, query, {scanner_count}); !warm.ok()) {
      return warm.status();
    }
    std::vector<double> samples;
    for (int rep = 0; rep < options.repeats; ++rep) {
      std::vector<absl::StatusOr<aggregation::AggregateResult>> results(
          static_cast<size_t>(options.parallel_queries));
      const auto start = std::chrono::steady_clock::now();
      {
        std::vector<std::jthread> threads;
        for (int q = 0; q < options.parallel_queries; ++q) {
          threads.emplace_back([&, q] {
            results[static_cast<size_t>(q)] =
                aggregation::Aggregate(store, query, {scanner_count});
          });
        }
      }
      samples.push_back(
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count());
      for (const auto& r : results) {
        if (!r.ok()) return r.status();
      }
      point.matches = results[0]->totals.matches;
    }
    point.median_ms = Median(samples);
    return absl::OkStatus();
  };

  std::vector<double> xs, ys;
  std::unique_ptr<storage::PostStore> largest;
  for (uint64_t n : options.sizes) {
    auto store = SyntheticClassifiedStore(n, options.num_buckets, options.seed);
    AggregateBenchPoint point{n, 0, 0, 0};
    if (absl::Status s = measure(*store, 0, point); !s.ok()) return s;
    report.size_sweep.push_back(point);
    xs.push_back(static_cast<double>(n));
    ys.push_back(point.median_ms);
    if (!largest || n >= largest->size()) largest = std::move(store);
  }
  if (xs.size() >= 2) {
    auto fit = FitLine(xs, ys);
    if (fit.ok()) report.fit = *fit;
  }
  if (largest) {
    std::vector<double> lat;
    for (int s : scanners) {
      AggregateBenchPoint point{largest->size(), s, 0, 0};
      if (absl::Status st = measure(*largest, s, point); !st.ok()) return st;
      report.scanner_sweep.push_back(point);
      lat.push_back(point.median_ms);
    }
    report.scanner_monotone = StrictlyDecreasing(lat);
  }
  return report;
}

nlohmann::json AggregateBenchReport::ToJson() const {
  auto points = [](const std::vector<AggregateBenchPoint>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : v) {
      out.push_back({{"posts", p.posts},
                     {"scanners", p.scanners},
                     {"median_ms", p.median_ms},
                     {"matches", p.matches}});
    }
    return out;
  };
  return {{"size_sweep", points(size_sweep)},
          {"scanner_sweep", points(scanner_sweep)},
          {"fit", {{"slope_ms_per_post", fit.slope}, {"intercept_ms", fit.intercept},
                   {"r2", fit.r2}}},
          {"scanner_monotone", scanner_monotone},
          {"cores", cores}};
}

std::string AggregateBenchReport::Format() const {
  std::string out = absl::StrFormat("%-10s %10s %10s\n", "posts", "median_ms", "matches");
  for (const auto& p : size_sweep) {
    out += absl::StrFormat("%-10d %10.3f %10d\n", p.posts, p.median_ms, p.matches);
  }
  out += absl::StrFormat("linear fit: %.6g ms/post + %.3f ms, R^2 = %.4f\n", fit.slope,
                         fit.intercept, fit.r2);
  out += absl::StrFormat("%-10s %10s   (cores: %d)\n", "scanners", "median_ms", cores);
  for (const auto& p : scanner_sweep) {
    out += absl::StrFormat("%-10d %10.3f\n", p.scanners, p.median_ms);
  }
  out += absl::StrFormat("strictly decreasing with scanners: %s\n",
                         scanner_monotone ? "yes" : "no");
  return out;
}

}  // namespace sentiflow::harness
