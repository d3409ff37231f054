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

#include "open5g/bytes.hpp"
#include "open5g/wire/message.hpp"

namespace open5g::wire {

inline constexpr std::size_t kTunnelHeaderSize = 8;

// GTP-U G-PDU: version 1, PT=1, no optional fields.
inline constexpr std::uint8_t kGtpuFlags = 0x30;
inline constexpr std::uint8_t kGtpuGpdu = 0xff;

// GRE with only the key-present bit set.
inline constexpr std::uint16_t kSigFlags = 0x2000;
inline constexpr std::uint16_t kSigProtocol = 0x0000;

struct GtpuFrame {
    Teid teid = 0;
    Bytes payload;

    bool operator==(const GtpuFrame &) const = default;
};

struct SigTunnelFrame {
    TunnelId tunnel_id = 0;
    Bytes payload;

    bool operator==(const SigTunnelFrame &) const = default;
};

/// Throws InvalidMessage if the payload exceeds 65535 bytes.
Bytes encap_gtpu(ByteView payload, Teid teid);
/// Throws Truncated, BadGtpuFlags or BadLength.
GtpuFrame decap_gtpu(ByteView frame);

Bytes encap_sig(ByteView payload, TunnelId tunnel_id);
/// Throws Truncated or BadSigFlags.
SigTunnelFrame decap_sig(ByteView frame);

} // namespace open5g::wire
