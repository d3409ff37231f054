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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "open5g/bytes.hpp"
#include "open5g/ctrl/messages.hpp"
#include "open5g/wire/framing.hpp"
#include "open5g/wire/message.hpp"

namespace open5g::sim {

/// NAS registration the UE embeds in RRCSetupComplete.
Bytes registration_nas(std::string_view ue_name);
std::optional<std::string> parse_registration_nas(ByteView nas);

struct RadioTx {
    wire::Crnti crnti = 0;
    wire::BearerId bearer_id = 0;
    Bytes payload;
};

/// Reactive UE: answers RRCSetup, SecurityModeCommand and RRCReconfiguration
/// in turn, and sends or receives data on request.
class UeAgent {
public:
    enum class State { Idle, AwaitSetup, AwaitSecurity, AwaitReconfiguration, Configured };

    UeAgent(std::string name, std::uint32_t ue_tmp_id) : name_(std::move(name)), ue_tmp_id_(ue_tmp_id) {}

    /// RRCSetupRequest on SRB0. Throws NotIdle.
    RadioTx power_on();

    /// Reply to a downlink signaling message, if one is due. Messages for
    /// another UE on the common channel, or unexpected in the current state,
    /// are ignored.
    std::optional<RadioTx> on_signaling(wire::BearerId bearer_id, ByteView payload);

    RadioTx send_data(wire::BearerId bearer_id, ByteView payload) const { return {crnti_, bearer_id, Bytes(payload.begin(), payload.end())}; }

    const std::string &name() const { return name_; }
    std::uint32_t ue_tmp_id() const { return ue_tmp_id_; }
    State state() const { return state_; }
    wire::Crnti crnti() const { return crnti_; }
    const std::vector<wire::BearerId> &drb_bearer_ids() const { return drbs_; }

private:
    std::string name_;
    std::uint32_t ue_tmp_id_;
    State state_ = State::Idle;
    wire::Crnti crnti_ = 0;
    wire::BearerId srb1_ = 0;
    wire::BearerId srb2_ = 0;
    std::vector<wire::BearerId> drbs_;
};

/// AMF behaviour for an InitialUEMessage: identifies the UE from its NAS
/// registration and answers with that UE's configured sessions plus freshly
/// derived security information. Throws UnknownUe.
ctrl::NgapMessage amf_stub(const ctrl::NgapMessage &msg,
                           const std::map<std::string, std::vector<ctrl::PduSessionSpec>> &ue_session_specs,
                           std::uint64_t seed);

/// Tracks the downlink tunnels the controller reported back.
class CoreNetwork {
public:
    CoreNetwork(std::map<std::string, std::vector<ctrl::PduSessionSpec>> specs, std::uint64_t seed)
        : specs_(std::move(specs)), seed_(seed) {}

    /// Returns the reply for the controller, if any. Throws UnknownUe.
    std::optional<ctrl::NgapMessage> on_ngap(const ctrl::NgapMessage &msg);

    struct Tunnel {
        wire::Teid teid = 0;
        Ipv4Addr gnb_ip;
    };
    std::optional<Tunnel> tunnel(const std::string &ue, std::uint32_t session_id) const;

private:
    std::map<std::string, std::vector<ctrl::PduSessionSpec>> specs_;
    std::uint64_t seed_;
    std::map<std::uint32_t, std::string> ue_by_ran_id_;
    std::map<std::pair<std::string, std::uint32_t>, Tunnel> tunnels_;
};

enum class Direction { Uplink, Downlink };

struct UpfReceipt {
    wire::Teid teid = 0;
    Bytes payload;
    bool operator==(const UpfReceipt &) const = default;
};

struct BadFrame {
    Errc reason = Errc::BadFrame;
    bool operator==(const BadFrame &) const = default;
};

/// Uplink GTP-U frame arriving at the UPF.
std::variant<UpfReceipt, BadFrame> upf_uplink(ByteView frame);

/// Downlink pseudo-IP packet wrapped for the session tunnel.
Bytes upf_downlink(const wire::PseudoIpPacket &packet, wire::Teid teid);

} // namespace open5g::sim
