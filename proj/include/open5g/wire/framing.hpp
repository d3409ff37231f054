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

#include <cstddef>
#include <cstdint>
#include <optional>

#include "open5g/bytes.hpp"

namespace open5g::wire {

/// Messages on the common SRB0 channel are prefixed with
/// ue_tmp_id u32 | msg_len u16 so the receiver can tell UEs apart.
inline constexpr std::size_t kSrb0EnvelopeSize = 6;

struct Srb0Envelope {
    std::uint32_t ue_tmp_id = 0;
    Bytes message;

    bool operator==(const Srb0Envelope &) const = default;
};

Bytes wrap_srb0(std::uint32_t ue_tmp_id, ByteView message);
/// Throws Truncated or BadLength.
Srb0Envelope unwrap_srb0(ByteView payload);

/// Emulated inner IP packet: ip_dst 4B | ip_proto 1B | l4_dst 2B | len 2B,
/// followed by `len` bytes of data.
inline constexpr std::size_t kPseudoIpHeaderSize = 9;
inline constexpr std::uint8_t kIpProtoTcp = 6;
inline constexpr std::uint8_t kIpProtoUdp = 17;

struct PseudoIpPacket {
    Ipv4Addr ip_dst;
    std::uint8_t ip_proto = 0;
    std::uint16_t l4_dst = 0;
    Bytes data;

    bool operator==(const PseudoIpPacket &) const = default;
};

Bytes make_pseudo_ip(const PseudoIpPacket &packet);
/// Returns nullopt unless `bytes` is a well-formed pseudo packet.
std::optional<PseudoIpPacket> parse_pseudo_ip(ByteView bytes);

} // namespace open5g::wire
