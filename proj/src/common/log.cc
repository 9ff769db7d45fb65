// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/common/log.h"

#include <atomic>
#include <cstdio>
#include <mutex>

#include "sentiflow/common/clock.h"

namespace sentiflow {
namespace {

std::atomic<LogLevel> g_level{LogLevel::kInfo};
std::mutex g_write_mu;

const char* LevelName(LogLevel level) {
  switch (level) {
    case LogLevel::kDebug: return "debug";
    case LogLevel::kInfo: return "info";
    case LogLevel::kWarn: return "warn";
    case LogLevel::kError: return "error";
    case LogLevel::kOff: break;
  }
  return "off";
}

}  // namespace

void SetLogLevel(LogLevel level) { g_level.store(level); }
LogLevel GetLogLevel() { return g_level.load(); }

void LogEvent(LogLevel level, std::string_view event,
              const nlohmann::json& fields) {
  if (level < g_level.load() || level == LogLevel::kOff) return;
  nlohmann::json line = {{"ts", SystemClock::Default()->NowMs()},
                         {"level", LevelName(level)},
                         {"event", event}};
  if (fields.is_object()) {
    for (const auto& [k, v] : fields.items()) line[k] = v;
  }
  const std::string text = line.dump(-1, ' ', false,
                                     nlohmann::json::error_handler_t::replace);
  std::lock_guard<std::mutex> lock(g_write_mu);
  std::fprintf(stderr, "%s\n", text.c_str());
}

}  // namespace sentiflow
