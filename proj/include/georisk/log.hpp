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

#ifndef GEORISK_LOG_HPP_
#define GEORISK_LOG_HPP_

#include <string>

namespace georisk {

enum class LogLevel { off, info, debug };

// Level from GEORISK_LOG (off|info|debug), read once; defaults to off.
LogLevel log_level();
void set_log_level(LogLevel level);

void log_info(const std::string& message);
void log_debug(const std::string& message);

}  // namespace georisk

#endif  // GEORISK_LOG_HPP_
