// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/ingestion/spider.h"

#include <algorithm>
#include <thread>

#include "absl/strings/str_cat.h"
#include "sentiflow/common/log.h"

namespace sentiflow::ingestion {
namespace {

void Flush(std::vector<RawPost>& pending, Ingestor& ingestor,
           SpiderReport& report) {
  if (pending.empty()) return;
  ++report.flushes;
  for (const RawPost& post : pending) {
    auto outcome = ingestor.Ingest(post);
    if (outcome.ok()) {
      if (outcome->status == IngestStatus::kIngested) {
        ++report.ingested;
      } else {
        ++report.duplicates;
      }
    } else if (absl::IsInvalidArgument(outcome.status())) {
      ++report.malformed;
    } else {
      ++report.ingest_errors;
      LogEvent(LogLevel::kWarn, "ingest.error",
               {{"source_id", post.source_id},
                {"error", outcome.status().ToString()}});
    }
  }
  pending.clear();
}

// Sleeps in short slices so a stop request is honored promptly.
void InterruptibleSleep(const Clock& clock, int64_t ms, std::stop_token stop) {
  constexpr int64_t kSlice = 100;
  while (ms > 0 && !stop.stop_requested()) {
    const int64_t step = std::min(ms, kSlice);
    clock.SleepForMs(step);
    ms -= step;
  }
}

}  // namespace

size_t SpiderConfig::FlushThreshold(int spider_id) const {
  return static_cast<size_t>(min_buffer_size) +
         static_cast<size_t>(buffer_step) * static_cast<size_t>(spider_id);
}

absl::Status SpiderConfig::Validate() const {
  if (num_spiders < 1) return absl::InvalidArgumentError("num_spiders must be >= 1");
  if (min_buffer_size < 1) {
    return absl::InvalidArgumentError("min_buffer_size must be >= 1");
  }
  if (buffer_step < 0) return absl::InvalidArgumentError("buffer_step must be >= 0");
  if (laps < 0) return absl::InvalidArgumentError("laps must be >= 0");
  if (sleep_s < 0) return absl::InvalidArgumentError("sleep_s must be >= 0");
  return absl::OkStatus();
}

SpiderReport& SpiderReport::operator+=(const SpiderReport& o) {
  laps_done += o.laps_done;
  fetch_calls += o.fetch_calls;
  fetched += o.fetched;
  ingested += o.ingested;
  duplicates += o.duplicates;
  malformed += o.malformed;
  ingest_errors += o.ingest_errors;
  source_errors += o.source_errors;
  flushes += o.flushes;
  return *this;
}

nlohmann::json SpiderReport::ToJson() const {
  return {{"laps_done", laps_done},     {"fetch_calls", fetch_calls},
          {"fetched", fetched},         {"ingested", ingested},
          {"duplicates", duplicates},   {"malformed", malformed},
          {"ingest_errors", ingest_errors}, {"source_errors", source_errors},
          {"flushes", flushes}};
}

absl::StatusOr<std::vector<std::vector<std::string>>> PartitionTerms(
    std::span<const std::string> terms, int num_spiders) {
  if (num_spiders < 1) {
    return absl::InvalidArgumentError("num_spiders must be >= 1");
  }
  if (terms.empty()) return absl::InvalidArgumentError("empty term list");
  const size_t n = static_cast<size_t>(num_spiders);
  const size_t base = terms.size() / n;
  const size_t extra = terms.size() % n;
  std::vector<std::vector<std::string>> parts(n);
  size_t pos = 0;
  for (size_t i = 0; i < n; ++i) {
    const size_t len = base + (i < extra ? 1 : 0);
    parts[i].assign(terms.begin() + pos, terms.begin() + pos + len);
    pos += len;
  }
  return parts;
}

SpiderReport RunSpider(int spider_id, std::span<const std::string> terms,
                       PostSource& source, const SpiderConfig& config,
                       Ingestor& ingestor, const Clock& clock,
                       std::stop_token stop) {
  SpiderReport report;
  const size_t threshold = config.FlushThreshold(spider_id);
  std::vector<RawPost> pending;
  pending.reserve(threshold);
  for (int lap = 0; config.laps == 0 || lap < config.laps; ++lap) {
    if (stop.stop_requested()) break;
    for (const std::string& term : terms) {
      if (stop.stop_requested()) break;
      ++report.fetch_calls;
      auto posts = source.Fetch(term);
      if (!posts.ok()) {
        ++report.source_errors;
        LogEvent(LogLevel::kWarn, "spider.fetch_failed",
                 {{"spider", spider_id}, {"term", term},
                  {"error", posts.status().ToString()}});
        continue;
      }
      report.fetched += posts->size();
      for (RawPost& p : *posts) {
        pending.push_back(std::move(p));
        if (pending.size() >= threshold) Flush(pending, ingestor, report);
      }
    }
    Flush(pending, ingestor, report);
    ++report.laps_done;
    const bool last = config.laps != 0 && lap + 1 == config.laps;
    if (!last && config.sleep_s > 0) {
      InterruptibleSleep(clock, static_cast<int64_t>(config.sleep_s * 1000),
                         stop);
    }
  }
  Flush(pending, ingestor, report);
  return report;
}

absl::StatusOr<SpiderReport> RunSpiders(std::span<const std::string> terms,
                                        PostSource& source,
                                        const SpiderConfig& config,
                                        Ingestor& ingestor, const Clock& clock,
                                        std::stop_token stop) {
  if (absl::Status st = config.Validate(); !st.ok()) return st;
  auto parts = PartitionTerms(terms, config.num_spiders);
  if (!parts.ok()) return parts.status();
  std::vector<SpiderReport> reports(parts->size());
  {
    std::vector<std::jthread> threads;
    for (size_t i = 0; i < parts->size(); ++i) {
      threads.emplace_back([&, i] {
        reports[i] = RunSpider(static_cast<int>(i), (*parts)[i], source, config,
                               ingestor, clock, stop);
      });
    }
  }
  SpiderReport total;
  for (const auto& r : reports) total += r;
  return total;
}

}  // namespace sentiflow::ingestion
