// Copyright 2026 The open5g-sim Authors
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

#pragma once

#include <string>
#include <string_view>

#include "open5g/sim/trace.hpp"

namespace open5g::cli {

inline constexpr std::string_view kTraceHeader = "# open5g-sim trace v1";

/// One record per line: step time src dst channel kind digest, the digest as
/// 16 hex digits.
std::string format_trace(const sim::EventTrace &trace);

/// Blank lines and '#' comments are skipped. Throws ParseError with the line
/// number.
sim::EventTrace parse_trace(std::string_view text);

sim::EventTrace load_trace(const std::string &path);
void save_trace(const std::string &path, const sim::EventTrace &trace);

} // namespace open5g::cli
