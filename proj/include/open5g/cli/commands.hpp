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

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "open5g/sim/trace.hpp"

namespace open5g::cli {

enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitParseError = 2, kExitSimError = 3 };

struct VerifyResult {
    bool equal = true;
    /// Golden step number of the first differing record (trace step number
    /// if the golden ran out).
    std::optional<std::uint64_t> divergence_step;
    std::string message;
};

/// Compares (src, dst, channel, kind) sequences after keeping only the
/// records on `channels`; an empty set keeps everything.
VerifyResult verify(const sim::EventTrace &trace, const sim::EventTrace &golden,
                    const std::set<sim::Channel> &channels = {});

/// Comma-separated channel list such as "srb0,srb1,ngap". Throws ParseError.
std::set<sim::Channel> parse_channel_list(std::string_view text);

/// Flow table of `node` once the trace holds `at_step` records. Throws
/// UnknownNode.
std::vector<std::string> table_dump(const std::string &scenario_path, const std::string &node,
                                    std::uint64_t at_step);

int cmd_run(const std::string &scenario_path, const std::string &out_path, std::ostream &out, std::ostream &err);
int cmd_verify(const std::string &trace_path, const std::string &golden_path, const std::string &channels,
               std::ostream &out, std::ostream &err);
int cmd_table_dump(const std::string &scenario_path, const std::string &node, std::uint64_t at_step,
                   std::ostream &out, std::ostream &err);

} // namespace open5g::cli
