// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <thread>

#include "absl/status/status.h"
#include "json.hpp"
#include "sentiflow/buffer/buffer_store.h"
#include "sentiflow/storage/post_store.h"

namespace sentiflow::storer {

struct StorerConfig {
  size_t batch_size = 512;
  int64_t poll_interval_ms = 200;
  int64_t lease_s = 30;
  std::string output_set = buffer::kOutputSet;

  absl::Status Validate() const;
};

struct StorerStats {
  uint64_t drained_total = 0;
  uint64_t failed_total = 0;

  nlohmann::json ToJson() const;
};

// Moves classifier results from the output set into storage. A record is
// acked only after its polarity is written. Records naming a post that
// storage does not have, or carrying garbage, can never succeed; they are
// acked and counted as failed. Any other write error leaves the record in
// the set for the next drain.
class PolarityStorer {
 public:
  PolarityStorer(buffer::BufferStore& buffers, storage::PolarityWriter& writer,
                 int num_buckets, StorerConfig config = {});
  ~PolarityStorer();

  PolarityStorer(const PolarityStorer&) = delete;
  PolarityStorer& operator=(const PolarityStorer&) = delete;

  // One poll of up to batch_size records. Returns how many were stored.
  size_t DrainOnce();

  // Background loop calling DrainOnce every poll_interval_ms. Start on a
  // running storer is a no-op.
  void Start();
  void Stop();
  bool running() const { return loop_.joinable(); }

  StorerStats stats() const;
  const StorerConfig& config() const { return config_; }

 private:
  void Loop(std::stop_token stop);

  buffer::BufferStore& buffers_;
  storage::PolarityWriter& writer_;
  const int num_buckets_;
  const StorerConfig config_;
  std::jthread loop_;
  std::atomic<uint64_t> drained_{0};
  std::atomic<uint64_t> failed_{0};
};

}  // namespace sentiflow::storer
