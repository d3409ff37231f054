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
#include <string_view>
#include <variant>
#include <vector>

#include "open5g/bytes.hpp"

namespace open5g::wire {

inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kHeaderSize = 8;
inline constexpr std::size_t kMaxMessageSize = 0xffff;

using PortId = std::uint32_t;
using Crnti = std::uint16_t;
using BearerId = std::uint8_t;
using Teid = std::uint32_t;
using TunnelId = std::uint32_t;

inline constexpr Crnti kMaxCrnti = 65523;
inline constexpr BearerId kMaxBearerId = 31;

// Radio bearer numbering on the logical-port key. SRB1 and SRB2 sit at 3 and
// 4 so that they never collide with the first two DRBs of a UE.
inline constexpr Crnti kCommonCrnti = 0;
inline constexpr BearerId kSrb0BearerId = 0;
inline constexpr BearerId kSrb1BearerId = 3;
inline constexpr BearerId kSrb2BearerId = 4;

inline constexpr std::uint16_t kGtpuUdpPort = 2152;

enum class MsgType : std::uint8_t { Hello = 1, Error = 2, PortMod = 3, FlowMod = 4 };

/// Registry of layer-configuration TLV types.
enum class LayerType : std::uint16_t { Sdap = 1, Pdcp = 2, Rlc = 3, Mac = 4, Phy = 5, Gtp = 6 };

struct ConfigTlv {
    std::uint16_t type = 0;
    Bytes value;

    bool operator==(const ConfigTlv &) const = default;
};

enum class BearerKind : std::uint8_t { Srb = 0, Drb = 1 };

struct RadioBearer {
    Crnti crnti = 0;
    BearerId bearer_id = 0;
    BearerKind kind = BearerKind::Srb;
    std::vector<ConfigTlv> layer_config;

    bool operator==(const RadioBearer &) const = default;
};

struct GtpTunnel {
    Ipv4Addr local_ip;
    Ipv4Addr remote_ip;
    std::uint16_t udp_port = kGtpuUdpPort;
    Teid teid = 0;

    bool operator==(const GtpTunnel &) const = default;
};

struct SigTunnel {
    Ipv4Addr controller_ip;
    TunnelId tunnel_id = 0;

    bool operator==(const SigTunnel &) const = default;
};

using PortSpec = std::variant<RadioBearer, GtpTunnel, SigTunnel>;

/// Wire code of a PortSpec alternative; kNone marks a DELETE with no spec.
enum class PortClass : std::uint8_t { Radio = 0, Gtp = 1, Sig = 2, None = 0xff };

PortClass port_class(const PortSpec &spec);

enum class PortCommand : std::uint8_t { Create = 0, Modify = 1, Delete = 2 };

struct PortMod {
    PortCommand command = PortCommand::Create;
    PortId port_id = 0;
    std::optional<PortSpec> spec;

    bool operator==(const PortMod &) const = default;
};

enum class MatchField : std::uint16_t {
    InPort = 1,
    Crnti = 2,
    BearerId = 3,
    IpDst = 4,
    IpProto = 5,
    L4Dst = 6,
};

/// Absent fields are wildcards.
struct FlowMatch {
    std::optional<PortId> in_port;
    std::optional<Crnti> crnti;
    std::optional<BearerId> bearer_id;
    std::optional<Ipv4Addr> ip_dst;
    std::optional<std::uint8_t> ip_proto;
    std::optional<std::uint16_t> l4_dst;

    bool empty() const {
        return !in_port && !crnti && !bearer_id && !ip_dst && !ip_proto && !l4_dst;
    }
    std::size_t field_count() const;

    bool operator==(const FlowMatch &) const = default;
};

enum class ActionKind : std::uint8_t { Output = 1 };

struct FlowAction {
    ActionKind kind = ActionKind::Output;
    PortId out_port = 0;

    bool operator==(const FlowAction &) const = default;
};

enum class FlowCommand : std::uint8_t { Add = 0, Delete = 1 };

struct FlowMod {
    FlowCommand command = FlowCommand::Add;
    std::uint16_t priority = 0;
    FlowMatch match;
    FlowAction action;

    bool operator==(const FlowMod &) const = default;
};

struct Hello {
    bool operator==(const Hello &) const = default;
};

struct ErrorBody {
    std::uint16_t code = 0;
    Bytes detail;

    bool operator==(const ErrorBody &) const = default;
};

using MessageBody = std::variant<Hello, ErrorBody, PortMod, FlowMod>;

struct Message {
    std::uint32_t xid = 0;
    MessageBody body;

    MsgType type() const;
    bool operator==(const Message &) const = default;
};

std::string_view to_string(MsgType type);

} // namespace open5g::wire
