// Copyright 2026 The dyncover Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Diagnostics on stderr, filtered by DYNCOVER_LOG = quiet | info | debug
// (default quiet).

#ifndef DYNCOVER_LOG_HPP_
#define DYNCOVER_LOG_HPP_

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string_view>

namespace dyncover {

enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

inline LogLevel log_level_from_env() {
  const char* v = std::getenv("DYNCOVER_LOG");
  if (v == nullptr) return LogLevel::kQuiet;
  const std::string_view s(v);
  if (s == "debug") return LogLevel::kDebug;
  if (s == "info") return LogLevel::kInfo;
  return LogLevel::kQuiet;
}

inline LogLevel& log_level() {
  static LogLevel level = log_level_from_env();
  return level;
}

template <typename... Args>
void log_at(LogLevel level, const Args&... args) {
  if (static_cast<int>(log_level()) < static_cast<int>(level)) return;
  std::ostringstream os;
  os << (level == LogLevel::kDebug ? "[debug] " : "[info] ");
  (os << ... << args);
  os << '\n';
  std::cerr << os.str();
}

template <typename... Args>
void log_info(const Args&... args) {
  log_at(LogLevel::kInfo, args...);
}

template <typename... Args>
void log_debug(const Args&... args) {
  log_at(LogLevel::kDebug, args...);
}

}  // namespace dyncover

#endif  // DYNCOVER_LOG_HPP_
