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
#include <string_view>
#include <variant>
#include <vector>

#include "open5g/bytes.hpp"
#include "open5g/wire/message.hpp"

namespace open5g::ctrl {

// Simplified RRC. Each message is kind u8 followed by its fields, big-endian.

struct RrcSetupRequest {
    std::uint32_t ue_tmp_id = 0;
    bool operator==(const RrcSetupRequest &) const = default;
};

struct RrcSetup {
    wire::Crnti crnti = 0;
    wire::BearerId srb1_bearer_id = 0;
    bool operator==(const RrcSetup &) const = default;
};

/// Must carry the NAS message destined for the AMF.
struct RrcSetupComplete {
    Bytes nas_payload;
    bool operator==(const RrcSetupComplete &) const = default;
};

struct SecurityModeCommand {
    Bytes security_info;
    bool operator==(const SecurityModeCommand &) const = default;
};

struct SecurityModeComplete {
    bool operator==(const SecurityModeComplete &) const = default;
};

struct RrcReconfiguration {
    wire::BearerId srb2_bearer_id = 0;
    std::vector<wire::BearerId> drb_bearer_ids;
    bool operator==(const RrcReconfiguration &) const = default;
};

struct RrcReconfigurationComplete {
    bool operator==(const RrcReconfigurationComplete &) const = default;
};

using RrcMessage = std::variant<RrcSetupRequest, RrcSetup, RrcSetupComplete, SecurityModeCommand,
                                SecurityModeComplete, RrcReconfiguration, RrcReconfigurationComplete>;

std::string_view rrc_name(const RrcMessage &msg);
/// True for messages a UE sends toward the network.
bool is_uplink(const RrcMessage &msg);

Bytes encode_rrc(const RrcMessage &msg);
/// Throws MalformedTlv on bad input, InvalidMessage for a SetupComplete
/// without NAS payload.
RrcMessage decode_rrc(ByteView data);

// NG-AP stand-in between the controller and the AMF.

struct QosFlowSpec {
    std::uint32_t flow_id = 0;
    Ipv4Addr ip_dst;
    std::uint8_t ip_proto = 0;
    std::uint16_t l4_dst = 0;
    /// Session-local DRB label this flow rides on.
    std::uint8_t drb = 0;
    bool operator==(const QosFlowSpec &) const = default;
};

struct PduSessionSpec {
    std::uint32_t session_id = 0;
    /// Session-local DRB labels.
    std::vector<std::uint8_t> drbs;
    std::vector<QosFlowSpec> flows;
    bool operator==(const PduSessionSpec &) const = default;
};

struct InitialUeMessage {
    std::uint32_t ran_ue_id = 0;
    Bytes nas_payload;
    bool operator==(const InitialUeMessage &) const = default;
};

struct InitialContextSetupRequest {
    std::uint32_t ran_ue_id = 0;
    std::vector<PduSessionSpec> sessions;
    Bytes security_info;
    bool operator==(const InitialContextSetupRequest &) const = default;
};

struct SessionSetupResult {
    std::uint32_t session_id = 0;
    wire::Teid teid = 0;
    Ipv4Addr gnb_ip;
    bool operator==(const SessionSetupResult &) const = default;
};

struct InitialContextSetupResponse {
    std::uint32_t ran_ue_id = 0;
    std::vector<SessionSetupResult> sessions;
    bool operator==(const InitialContextSetupResponse &) const = default;
};

using NgapMessage = std::variant<InitialUeMessage, InitialContextSetupRequest, InitialContextSetupResponse>;

std::string_view ngap_name(const NgapMessage &msg);
Bytes encode_ngap(const NgapMessage &msg);
/// Throws MalformedTlv.
NgapMessage decode_ngap(ByteView data);

} // namespace open5g::ctrl
