// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <atomic>
#include <cstdint>

namespace sentiflow {

// Milliseconds since the Unix epoch, UTC.
using TimestampMs = int64_t;

inline constexpr int64_t kMsPerSecond = 1000;

// Every component that reads time or sleeps goes through a Clock so that
// TTLs, leases and crawler laps can be driven deterministically in tests.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual TimestampMs NowMs() const = 0;
  virtual void SleepForMs(int64_t ms) const = 0;
};

class SystemClock final : public Clock {
 public:
  TimestampMs NowMs() const override;
  void SleepForMs(int64_t ms) const override;

  static const SystemClock* Default();
};

// Time only moves when told to. SleepForMs advances the clock instead of
// blocking.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(TimestampMs start = 0) : now_(start) {}

  TimestampMs NowMs() const override { return now_.load(); }
  void SleepForMs(int64_t ms) const override;

  void Set(TimestampMs now) { now_.store(now); }
  void Advance(int64_t ms) { now_.fetch_add(ms); }

 private:
  mutable std::atomic<TimestampMs> now_;
};

}  // namespace sentiflow
