// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <string_view>

#include "json.hpp"

namespace sentiflow {

enum class LogLevel { kDebug = 0, kInfo = 1, kWarn = 2, kError = 3, kOff = 4 };

void SetLogLevel(LogLevel level);
LogLevel GetLogLevel();

// Writes one JSON object per line to stderr:
//   {"ts":..., "level":"info", "event":"storer.drain", ...fields}
void LogEvent(LogLevel level, std::string_view event,
              const nlohmann::json& fields = nlohmann::json::object());

}  // namespace sentiflow
