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

#include "open5g/sim/entities.hpp"

#include "open5g/wire/tunnel.hpp"

namespace open5g::sim {

namespace {

constexpr std::string_view kNasPrefix = "REGISTER ";

Bytes security_info_for(std::string_view ue_name, std::uint64_t seed) {
    ByteWriter w;
    auto name = to_bytes(ue_name);
    auto h1 = fnv1a64(name, 0xcbf29ce484222325ULL ^ seed);
    auto h2 = fnv1a64(name, h1);
    w.u32(static_cast<std::uint32_t>(h1 >> 32));
    w.u32(static_cast<std::uint32_t>(h1));
    w.u32(static_cast<std::uint32_t>(h2 >> 32));
    w.u32(static_cast<std::uint32_t>(h2));
    return std::move(w).take();
}

} // namespace

Bytes registration_nas(std::string_view ue_name) {
    return to_bytes(std::string(kNasPrefix) + std::string(ue_name));
}

std::optional<std::string> parse_registration_nas(ByteView nas) {
    auto text = to_text(nas);
    if (!text.starts_with(kNasPrefix) || text.size() == kNasPrefix.size()) {
        return std::nullopt;
    }
    return text.substr(kNasPrefix.size());
}

RadioTx UeAgent::power_on() {
    if (state_ != State::Idle) {
        throw Error(Errc::NotIdle, "NotIdle: " + name_);
    }
    state_ = State::AwaitSetup;
    auto rrc = ctrl::encode_rrc(ctrl::RrcSetupRequest{ue_tmp_id_});
    return {wire::kCommonCrnti, wire::kSrb0BearerId, wire::wrap_srb0(ue_tmp_id_, rrc)};
}

std::optional<RadioTx> UeAgent::on_signaling(wire::BearerId bearer_id, ByteView payload) {
    ctrl::RrcMessage msg;
    try {
        if (bearer_id == wire::kSrb0BearerId) {
            auto env = wire::unwrap_srb0(payload);
            if (env.ue_tmp_id != ue_tmp_id_) {
                return std::nullopt;
            }
            msg = ctrl::decode_rrc(env.message);
        } else {
            msg = ctrl::decode_rrc(payload);
        }
    } catch (const Error &) {
        return std::nullopt;
    }

    auto reply = [this](ctrl::RrcMessage m) { return RadioTx{crnti_, srb1_, ctrl::encode_rrc(m)}; };

    if (const auto *setup = std::get_if<ctrl::RrcSetup>(&msg); setup && state_ == State::AwaitSetup) {
        crnti_ = setup->crnti;
        srb1_ = setup->srb1_bearer_id;
        state_ = State::AwaitSecurity;
        return reply(ctrl::RrcSetupComplete{registration_nas(name_)});
    }
    if (std::holds_alternative<ctrl::SecurityModeCommand>(msg) && state_ == State::AwaitSecurity &&
        bearer_id == srb1_) {
        state_ = State::AwaitReconfiguration;
        return reply(ctrl::SecurityModeComplete{});
    }
    if (const auto *reconf = std::get_if<ctrl::RrcReconfiguration>(&msg);
        reconf && state_ == State::AwaitReconfiguration && bearer_id == srb1_) {
        srb2_ = reconf->srb2_bearer_id;
        drbs_ = reconf->drb_bearer_ids;
        state_ = State::Configured;
        return reply(ctrl::RrcReconfigurationComplete{});
    }
    return std::nullopt;
}

ctrl::NgapMessage amf_stub(const ctrl::NgapMessage &msg,
                           const std::map<std::string, std::vector<ctrl::PduSessionSpec>> &ue_session_specs,
                           std::uint64_t seed) {
    const auto *initial = std::get_if<ctrl::InitialUeMessage>(&msg);
    if (initial == nullptr) {
        throw Error(Errc::ProtocolViolation, "ProtocolViolation: AMF expects InitialUEMessage");
    }
    auto name = parse_registration_nas(initial->nas_payload);
    if (!name) {
        throw Error(Errc::UnknownUe, "UnknownUe: unreadable NAS registration");
    }
    auto it = ue_session_specs.find(*name);
    if (it == ue_session_specs.end()) {
        throw Error(Errc::UnknownUe, "UnknownUe: " + *name);
    }
    ctrl::InitialContextSetupRequest req;
    req.ran_ue_id = initial->ran_ue_id;
    req.sessions = it->second;
    req.security_info = security_info_for(*name, seed);
    return req;
}

std::optional<ctrl::NgapMessage> CoreNetwork::on_ngap(const ctrl::NgapMessage &msg) {
    if (const auto *initial = std::get_if<ctrl::InitialUeMessage>(&msg)) {
        auto reply = amf_stub(msg, specs_, seed_);
        ue_by_ran_id_[initial->ran_ue_id] = *parse_registration_nas(initial->nas_payload);
        return reply;
    }
    if (const auto *resp = std::get_if<ctrl::InitialContextSetupResponse>(&msg)) {
        auto it = ue_by_ran_id_.find(resp->ran_ue_id);
        if (it == ue_by_ran_id_.end()) {
            throw Error(Errc::UnknownUe, "UnknownUe: ran_ue_id " + std::to_string(resp->ran_ue_id));
        }
        for (const auto &s : resp->sessions) {
            tunnels_[{it->second, s.session_id}] = Tunnel{s.teid, s.gnb_ip};
        }
        return std::nullopt;
    }
    throw Error(Errc::ProtocolViolation, "ProtocolViolation: unexpected NGAP message at AMF");
}

std::optional<CoreNetwork::Tunnel> CoreNetwork::tunnel(const std::string &ue, std::uint32_t session_id) const {
    auto it = tunnels_.find({ue, session_id});
    if (it == tunnels_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::variant<UpfReceipt, BadFrame> upf_uplink(ByteView frame) {
    try {
        auto gtpu = wire::decap_gtpu(frame);
        return UpfReceipt{gtpu.teid, std::move(gtpu.payload)};
    } catch (const Error &e) {
        return BadFrame{e.code()};
    }
}

Bytes upf_downlink(const wire::PseudoIpPacket &packet, wire::Teid teid) {
    return wire::encap_gtpu(wire::make_pseudo_ip(packet), teid);
}

} // namespace open5g::sim
