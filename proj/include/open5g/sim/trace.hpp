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
#include <string>
#include <string_view>
#include <vector>

#include "open5g/bytes.hpp"

namespace open5g::sim {

enum class Channel { Open5g, Srb0, Srb1, Srb2, Ngap, Ngu, RadioData };

std::string_view to_string(Channel channel);
/// Accepts the upper-case names ("SRB1") and lower-case aliases ("srb1").
std::optional<Channel> parse_channel(std::string_view text);

struct TraceRecord {
    std::uint64_t step_no = 0;
    std::uint64_t time = 0;
    std::string src;
    std::string dst;
    Channel channel = Channel::Open5g;
    std::string kind;
    /// FNV-1a of the delivered bytes.
    std::uint64_t digest = 0;

    bool operator==(const TraceRecord &) const = default;
};

struct EventTrace {
    std::vector<TraceRecord> records;

    bool operator==(const EventTrace &) const = default;
};

std::uint64_t trace_digest(const EventTrace &trace);

} // namespace open5g::sim
