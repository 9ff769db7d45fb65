// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/sentiment/topology.h"

#include <condition_variable>
#include <exception>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "sentiflow/buffer/messages.h"
#include "sentiflow/common/log.h"

namespace sentiflow::sentiment {
namespace {

void WriteResult(buffer::BufferStore& buffers, const TopologyConfig& config,
                 const PipelineDoc& doc) {
  buffer::OutputMessage out{doc.post_id, doc.created_at, doc.polarity,
                            buffers.clock().NowMs(), doc.flagged};
  buffers.Enqueue(config.output_set, doc.post_id, buffer::EncodeOutput(out));
  buffers.Ack(config.input_set, doc.post_id);
}

absl::StatusOr<PipelineDoc> DocFromRecord(const buffer::BufferRecord& record) {
  auto msg = buffer::DecodeInput(record.value);
  if (!msg.ok()) return msg.status();
  PipelineDoc doc;
  doc.post_id = record.key;
  doc.lang = std::move(msg->lang);
  doc.created_at = msg->created_at;
  doc.text = std::move(msg->text);
  return doc;
}

const LanguagePack& PackFor(const LanguagePacks& packs, const TopologyConfig& config,
                            const std::string& lang) {
  auto it = packs.find(lang);
  return it != packs.end() ? it->second : packs.at(config.default_lang);
}

absl::Status ValidatePacks(const TopologyConfig& config, const LanguagePacks& packs) {
  if (!packs.contains(config.default_lang)) {
    return absl::InvalidArgumentError(
        absl::StrCat("no language pack for default language ", config.default_lang));
  }
  for (const auto& [lang, pack] : packs) {
    if (pack.resources == nullptr || pack.model == nullptr) {
      return absl::InvalidArgumentError(absl::StrCat("incomplete language pack ", lang));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Hints> ParseHints(std::string_view text) {
  std::vector<std::string> parts = absl::StrSplit(std::string(text), '-');
  if (parts.size() != kNumStages) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", kNumStages, " hints, got '", std::string(text), "'"));
  }
  Hints hints;
  for (int i = 0; i < kNumStages; ++i) {
    if (!absl::SimpleAtoi(parts[i], &hints[i]) || hints[i] < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad hint '", parts[i], "'"));
    }
  }
  return hints;
}

std::string FormatHints(const Hints& hints) { return absl::StrJoin(hints, "-"); }

absl::Status TopologyConfig::Validate() const {
  for (int h : hints) {
    if (h < 1) return absl::InvalidArgumentError("every hint must be >= 1");
  }
  if (queue_capacity < 1) return absl::InvalidArgumentError("queue_capacity must be >= 1");
  if (batch_size < 1) return absl::InvalidArgumentError("batch_size must be >= 1");
  if (spout_workers < 1) return absl::InvalidArgumentError("spout_workers must be >= 1");
  if (lease_s < 1) return absl::InvalidArgumentError("lease_s must be >= 1");
  if (idle_poll_ms < 0) return absl::InvalidArgumentError("idle_poll_ms must be >= 0");
  return absl::OkStatus();
}

nlohmann::json TopologyStats::ToJson() const {
  return {{"polled", polled},       {"classified", classified},
          {"flagged", flagged},     {"malformed", malformed},
          {"in_flight", in_flight}};
}

struct Topology::Stream {
  const LanguagePack* pack = nullptr;
  std::vector<std::unique_ptr<BoundedQueue<PipelineDoc>>> queues;
  std::array<std::atomic<int>, kNumStages> live{};
  std::vector<std::jthread> workers;
};

absl::StatusOr<std::unique_ptr<Topology>> Topology::Start(
    TopologyConfig config, LanguagePacks packs, buffer::BufferStore& buffers) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  if (absl::Status s = ValidatePacks(config, packs); !s.ok()) return s;
  return std::unique_ptr<Topology>(
      new Topology(std::move(config), std::move(packs), buffers));
}

Topology::Topology(TopologyConfig config, LanguagePacks packs,
                   buffer::BufferStore& buffers)
    : config_(std::move(config)), packs_(std::move(packs)), buffers_(buffers) {
  for (const auto& [lang, pack] : packs_) {
    auto stream = std::make_unique<Stream>();
    stream->pack = &pack;
    for (int i = 0; i < kNumStages; ++i) {
      stream->queues.push_back(
          std::make_unique<BoundedQueue<PipelineDoc>>(config_.queue_capacity));
      stream->live[i] = config_.hints[i];
    }
    for (int i = 0; i < kNumStages; ++i) {
      for (int w = 0; w < config_.hints[i]; ++w) {
        stream->workers.emplace_back(
            [this, s = stream.get(), i] { WorkerLoop(*s, i); });
      }
    }
    streams_.emplace(lang, std::move(stream));
  }
  for (int i = 0; i < config_.spout_workers; ++i) {
    spouts_.emplace_back([this](std::stop_token stop) { SpoutLoop(stop); });
  }
  LogEvent(LogLevel::kInfo, "topology.start",
           {{"hints", FormatHints(config_.hints)}, {"languages", packs_.size()}});
}

Topology::~Topology() { Stop(); }

Topology::Stream& Topology::Route(const std::string& lang) {
  auto it = streams_.find(lang);
  if (it == streams_.end()) it = streams_.find(config_.default_lang);
  return *it->second;
}

void Topology::SpoutLoop(std::stop_token stop) {
  std::mutex mu;
  std::condition_variable_any idle;
  while (!stop.stop_requested()) {
    std::vector<buffer::BufferRecord> batch =
        buffers_.PollBatch(config_.input_set, config_.batch_size, config_.lease_s);
    if (batch.empty()) {
      std::unique_lock lock(mu);
      idle.wait_for(lock, stop, std::chrono::milliseconds(config_.idle_poll_ms),
                    [] { return false; });
      continue;
    }
    for (const buffer::BufferRecord& record : batch) {
      polled_.fetch_add(1, std::memory_order_relaxed);
      auto doc = DocFromRecord(record);
      if (!doc.ok()) {
        malformed_.fetch_add(1, std::memory_order_relaxed);
        LogEvent(LogLevel::kWarn, "topology.malformed_input",
                 {{"key", record.key}, {"error", doc.status().ToString()}});
        buffers_.Ack(config_.input_set, record.key);
        continue;
      }
      if (!Route(doc->lang).queues[0]->Push(std::move(*doc))) return;
    }
  }
}

void Topology::WorkerLoop(Stream& stream, int stage) {
  const Stage s = static_cast<Stage>(stage);
  while (std::optional<PipelineDoc> doc = stream.queues[stage]->Pop()) {
    if (killed_.load()) break;
    try {
      if (config_.stage_hook) config_.stage_hook(s, *doc);
      RunStage(s, *doc, *stream.pack);
    } catch (const std::exception& e) {
      LogEvent(LogLevel::kWarn, "pipeline.stage_failed",
               {{"post_id", doc->post_id}, {"stage", StageName(s)}, {"what", e.what()}});
      doc->flagged = true;
      doc->polarity = 0;
    }
    if (doc->flagged || stage == kNumStages - 1) {
      Emit(*doc);
    } else if (!stream.queues[stage + 1]->Push(std::move(*doc))) {
      break;
    }
  }
  if (stream.live[stage].fetch_sub(1) == 1 && stage + 1 < kNumStages) {
    stream.queues[stage + 1]->Close();
  }
}

void Topology::Emit(const PipelineDoc& doc) {
  WriteResult(buffers_, config_, doc);
  (doc.flagged ? flagged_ : classified_).fetch_add(1, std::memory_order_relaxed);
}

void Topology::Stop() { Shutdown(/*kill=*/false); }

void Topology::Kill() { Shutdown(/*kill=*/true); }

void Topology::Shutdown(bool kill) {
  std::lock_guard lock(shutdown_mu_);
  if (stopped_) return;
  stopped_ = true;
  if (kill) {
    killed_ = true;
    for (auto& spout : spouts_) spout.request_stop();
    for (auto& [lang, stream] : streams_) {
      for (auto& q : stream->queues) q->Abort();
    }
  } else {
    for (auto& spout : spouts_) spout.request_stop();
  }
  spouts_.clear();
  for (auto& [lang, stream] : streams_) {
    stream->queues[0]->Close();
    stream->workers.clear();
  }
  LogEvent(LogLevel::kInfo, kill ? "topology.killed" : "topology.stopped",
           stats().ToJson());
}

TopologyStats Topology::stats() const {
  TopologyStats s;
  s.polled = polled_.load();
  s.classified = classified_.load();
  s.flagged = flagged_.load();
  s.malformed = malformed_.load();
  const uint64_t done = s.classified + s.flagged + s.malformed;
  s.in_flight = s.polled > done ? s.polled - done : 0;
  return s;
}

absl::StatusOr<size_t> DrainSerial(const TopologyConfig& config,
                                   const LanguagePacks& packs,
                                   buffer::BufferStore& buffers) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  if (absl::Status s = ValidatePacks(config, packs); !s.ok()) return s;
  size_t written = 0;
  while (true) {
    std::vector<buffer::BufferRecord> batch =
        buffers.PollBatch(config.input_set, config.batch_size, config.lease_s);
    if (batch.empty()) break;
    for (const buffer::BufferRecord& record : batch) {
      auto doc = DocFromRecord(record);
      if (!doc.ok()) {
        buffers.Ack(config.input_set, record.key);
        continue;
      }
      ProcessDoc(*doc, PackFor(packs, config, doc->lang), config.stage_hook);
      WriteResult(buffers, config, *doc);
      ++written;
    }
  }
  return written;
}

}  // namespace sentiflow::sentiment
