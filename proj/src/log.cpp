// Copyright 2026 The Georisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "georisk/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <string_view>

namespace georisk {

namespace {

LogLevel from_env() {
  const char* env = std::getenv("GEORISK_LOG");
  if (!env) return LogLevel::off;
  const std::string_view v(env);
  if (v == "debug") return LogLevel::debug;
  if (v == "info") return LogLevel::info;
  return LogLevel::off;
}

std::atomic<LogLevel>& level_slot() {
  static std::atomic<LogLevel> level{from_env()};
  return level;
}

}  // namespace

LogLevel log_level() { return level_slot().load(); }
void set_log_level(LogLevel level) { level_slot().store(level); }

void log_info(const std::string& message) {
  if (log_level() >= LogLevel::info) std::cerr << "[info] " << message << '\n';
}

void log_debug(const std::string& message) {
  if (log_level() >= LogLevel::debug) std::cerr << "[debug] " << message << '\n';
}

}  // namespace georisk
