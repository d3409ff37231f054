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

#include "open5g/sim/trace.hpp"

#include <array>
#include <cctype>

namespace open5g::sim {

namespace {

constexpr std::array<std::pair<Channel, std::string_view>, 7> kChannels{{
    {Channel::Open5g, "OPEN5G"},
    {Channel::Srb0, "SRB0"},
    {Channel::Srb1, "SRB1"},
    {Channel::Srb2, "SRB2"},
    {Channel::Ngap, "NGAP"},
    {Channel::Ngu, "NGU"},
    {Channel::RadioData, "RADIO_DATA"},
}};

} // namespace

std::string_view to_string(Channel channel) {
    for (const auto &[c, name] : kChannels) {
        if (c == channel) {
            return name;
        }
    }
    return "UNKNOWN";
}

std::optional<Channel> parse_channel(std::string_view text) {
    std::string upper(text);
    for (auto &ch : upper) {
        ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
    for (const auto &[c, name] : kChannels) {
        if (name == upper) {
            return c;
        }
    }
    return std::nullopt;
}

std::uint64_t trace_digest(const EventTrace &trace) {
    ByteWriter w;
    for (const auto &r : trace.records) {
        w.u32(static_cast<std::uint32_t>(r.step_no >> 32));
        w.u32(static_cast<std::uint32_t>(r.step_no));
        w.u32(static_cast<std::uint32_t>(r.time >> 32));
        w.u32(static_cast<std::uint32_t>(r.time));
        for (const auto *s : {&r.src, &r.dst, &r.kind}) {
            w.u16(static_cast<std::uint16_t>(s->size()));
            w.raw(to_bytes(*s));
        }
        w.u8(static_cast<std::uint8_t>(r.channel));
        w.u32(static_cast<std::uint32_t>(r.digest >> 32));
        w.u32(static_cast<std::uint32_t>(r.digest));
    }
    auto bytes = std::move(w).take();
    return fnv1a64(bytes);
}

} // namespace open5g::sim
