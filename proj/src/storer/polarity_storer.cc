// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/storer/polarity_storer.h"

#include <condition_variable>
#include <exception>
#include <mutex>

#include "sentiflow/buffer/messages.h"
#include "sentiflow/common/log.h"
#include "sentiflow/storage/row_key.h"

namespace sentiflow::storer {

absl::Status StorerConfig::Validate() const {
  if (batch_size < 1) return absl::InvalidArgumentError("batch_size must be >= 1");
  if (poll_interval_ms < 1) {
    return absl::InvalidArgumentError("poll_interval_ms must be >= 1");
  }
  if (lease_s < 1) return absl::InvalidArgumentError("lease_s must be >= 1");
  return absl::OkStatus();
}

nlohmann::json StorerStats::ToJson() const {
  return {{"drained_total", drained_total}, {"failed_total", failed_total}};
}

PolarityStorer::PolarityStorer(buffer::BufferStore& buffers,
                               storage::PolarityWriter& writer, int num_buckets,
                               StorerConfig config)
    : buffers_(buffers),
      writer_(writer),
      num_buckets_(num_buckets),
      config_(std::move(config)) {}

PolarityStorer::~PolarityStorer() { Stop(); }

size_t PolarityStorer::DrainOnce() {
  std::vector<buffer::BufferRecord> batch =
      buffers_.PollBatch(config_.output_set, config_.batch_size, config_.lease_s);
  std::vector<std::string> done;
  std::vector<std::string> retry;
  done.reserve(batch.size());
  size_t stored = 0;
  for (const buffer::BufferRecord& record : batch) {
    auto msg = buffer::DecodeOutput(record.value);
    if (!msg.ok()) {
      LogEvent(LogLevel::kWarn, "storer.malformed",
               {{"key", record.key}, {"error", msg.status().ToString()}});
      failed_.fetch_add(1);
      done.push_back(record.key);
      continue;
    }
    const storage::RowKey key{storage::AssignBucket(msg->post_id, num_buckets_),
                              msg->created_at, msg->post_id};
    const absl::Status s =
        writer_.UpdatePolarity(key, msg->polarity, msg->classified_at);
    if (s.ok()) {
      ++stored;
      done.push_back(record.key);
      continue;
    }
    failed_.fetch_add(1);
    const bool permanent = absl::IsNotFound(s) || absl::IsInvalidArgument(s);
    LogEvent(LogLevel::kWarn, "storer.update_failed",
             {{"post_id", msg->post_id}, {"error", s.ToString()}, {"permanent", permanent}});
    (permanent ? done : retry).push_back(record.key);
  }
  buffers_.Ack(config_.output_set, done);
  buffers_.Release(config_.output_set, retry);
  drained_.fetch_add(stored);
  return stored;
}

void PolarityStorer::Start() {
  if (loop_.joinable()) return;
  loop_ = std::jthread([this](std::stop_token stop) { Loop(stop); });
}

void PolarityStorer::Stop() {
  if (!loop_.joinable()) return;
  loop_.request_stop();
  loop_.join();
  loop_ = std::jthread();
}

void PolarityStorer::Loop(std::stop_token stop) {
  std::mutex mu;
  std::condition_variable_any cv;
  while (!stop.stop_requested()) {
    try {
      // Keep going while batches come back full.
      while (!stop.stop_requested() && DrainOnce() == config_.batch_size) {
      }
    } catch (const std::exception& e) {
      LogEvent(LogLevel::kError, "storer.loop_error", {{"what", e.what()}});
    }
    std::unique_lock lock(mu);
    cv.wait_for(lock, stop, std::chrono::milliseconds(config_.poll_interval_ms),
                [] { return false; });
  }
}

StorerStats PolarityStorer::stats() const {
  return {drained_.load(), failed_.load()};
}

}  // namespace sentiflow::storer
