// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/common/clock.h"

#include <chrono>
#include <thread>

namespace sentiflow {

TimestampMs SystemClock::NowMs() const {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch())
      .count();
}

void SystemClock::SleepForMs(int64_t ms) const {
  if (ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(ms));
}

const SystemClock* SystemClock::Default() {
  static const SystemClock clock;
  return &clock;
}

void ManualClock::SleepForMs(int64_t ms) const {
  if (ms > 0) now_.fetch_add(ms);
}

}  // namespace sentiflow
