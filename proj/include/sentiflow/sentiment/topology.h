// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sentiflow/buffer/buffer_store.h"
#include "sentiflow/common/bounded_queue.h"
#include "sentiflow/sentiment/pipeline.h"

namespace sentiflow::sentiment {

using Hints = std::array<int, kNumStages>;

// "1-1-1-1-2-6-2" in stage order.
absl::StatusOr<Hints> ParseHints(std::string_view text);
std::string FormatHints(const Hints& hints);

struct TopologyConfig {
  Hints hints = {1, 1, 1, 1, 1, 1, 1};
  size_t queue_capacity = 1024;
  size_t batch_size = 64;
  int spout_workers = 1;
  int64_t lease_s = 30;
  // Spout back-off when the input set is empty.
  int64_t idle_poll_ms = 5;
  std::string input_set = buffer::kInputSet;
  std::string output_set = buffer::kOutputSet;
  // Posts in a language without a pack go to this stream.
  std::string default_lang = "en";
  StageHook stage_hook;

  absl::Status Validate() const;
};

struct TopologyStats {
  uint64_t polled = 0;
  uint64_t classified = 0;
  uint64_t flagged = 0;
  uint64_t malformed = 0;
  uint64_t in_flight = 0;

  nlohmann::json ToJson() const;
};

using LanguagePacks = std::map<std::string, LanguagePack>;

// Seven stages per language over bounded queues, fed by spout threads that
// lease batches from the input set. The last stage writes the polarity to
// the output set and only then acks the input record.
class Topology {
 public:
  static absl::StatusOr<std::unique_ptr<Topology>> Start(
      TopologyConfig config, LanguagePacks packs, buffer::BufferStore& buffers);

  ~Topology();
  Topology(const Topology&) = delete;
  Topology& operator=(const Topology&) = delete;

  // Stops polling and lets every queued doc finish.
  void Stop();
  // Stops at once. Unfinished docs stay unacked and come back when their
  // lease runs out.
  void Kill();

  TopologyStats stats() const;

 private:
  struct Stream;

  Topology(TopologyConfig config, LanguagePacks packs, buffer::BufferStore& buffers);

  void SpoutLoop(std::stop_token stop);
  void WorkerLoop(Stream& stream, int stage);
  void Emit(const PipelineDoc& doc);
  Stream& Route(const std::string& lang);
  void Shutdown(bool kill);

  const TopologyConfig config_;
  const LanguagePacks packs_;
  buffer::BufferStore& buffers_;
  std::map<std::string, std::unique_ptr<Stream>> streams_;
  std::vector<std::jthread> spouts_;
  std::mutex shutdown_mu_;
  bool stopped_ = false;
  std::atomic<bool> killed_{false};

  std::atomic<uint64_t> polled_{0};
  std::atomic<uint64_t> classified_{0};
  std::atomic<uint64_t> flagged_{0};
  std::atomic<uint64_t> malformed_{0};
};

// Same stages on the calling thread: polls, processes, writes and acks
// until the input set is empty. Returns the number of outputs written.
absl::StatusOr<size_t> DrainSerial(const TopologyConfig& config,
                                   const LanguagePacks& packs,
                                   buffer::BufferStore& buffers);

}  // namespace sentiflow::sentiment
