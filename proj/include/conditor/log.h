// Copyright 2026 The Conditor Authors
//
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

// Minimal leveled stderr logger. The threshold comes from CONDITOR_LOG
// (error, warn, info, debug; default warn).

#ifndef CONDITOR_LOG_H_
#define CONDITOR_LOG_H_

#include <optional>
#include <string_view>

namespace conditor {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

std::optional<LogLevel> parse_log_level(std::string_view name);
LogLevel log_threshold();
void set_log_threshold(LogLevel level);
void log(LogLevel level, std::string_view message);

}  // namespace conditor

#endif  // CONDITOR_LOG_H_
