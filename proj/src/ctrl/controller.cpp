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

#include "open5g/ctrl/controller.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "open5g/detail/overloaded.hpp"
#include "open5g/wire/codec.hpp"
#include "open5g/wire/framing.hpp"
#include "open5g/wire/tunnel.hpp"

namespace open5g::ctrl {

namespace {

using detail::overloaded;

[[noreturn]] void violation(const std::string &why) {
    throw Error(Errc::ProtocolViolation, "ProtocolViolation: " + why);
}

std::string_view layer_name(wire::LayerType layer) {
    switch (layer) {
    case wire::LayerType::Sdap: return "SDAP";
    case wire::LayerType::Pdcp: return "PDCP";
    case wire::LayerType::Rlc: return "RLC";
    case wire::LayerType::Mac: return "MAC";
    case wire::LayerType::Phy: return "PHY";
    case wire::LayerType::Gtp: return "GTP";
    }
    return "?";
}

wire::FlowMod flow_add(std::uint16_t priority, wire::FlowMatch match, PortId out_port) {
    wire::FlowMod fm;
    fm.command = wire::FlowCommand::Add;
    fm.priority = priority;
    fm.match = match;
    fm.action.out_port = out_port;
    return fm;
}

wire::FlowMatch radio_match(Crnti crnti, BearerId bearer_id) {
    wire::FlowMatch m;
    m.crnti = crnti;
    m.bearer_id = bearer_id;
    return m;
}

wire::FlowMatch in_port_match(PortId port) {
    wire::FlowMatch m;
    m.in_port = port;
    return m;
}

bool is_srb_bearer(BearerId id) {
    return id == wire::kSrb0BearerId || id == wire::kSrb1BearerId || id == wire::kSrb2BearerId;
}

} // namespace

std::string_view to_string(RrcState state) {
    switch (state) {
    case RrcState::Idle: return "IDLE";
    case RrcState::SetupRequested: return "SETUP_REQUESTED";
    case RrcState::Connected: return "CONNECTED";
    case RrcState::Secured: return "SECURED";
    case RrcState::Configured: return "CONFIGURED";
    }
    return "?";
}

Bytes ConfigBatch::encode() const {
    Bytes out;
    for (const auto &msg : messages) {
        auto bytes = wire::encode(msg);
        out.insert(out.end(), bytes.begin(), bytes.end());
    }
    return out;
}

std::vector<wire::ConfigTlv> layer_config(Rat rat, wire::BearerKind kind) {
    static constexpr wire::LayerType stack[] = {wire::LayerType::Sdap, wire::LayerType::Pdcp, wire::LayerType::Rlc,
                                                wire::LayerType::Mac, wire::LayerType::Phy};
    std::vector<wire::ConfigTlv> out;
    for (auto layer : stack) {
        if (layer == wire::LayerType::Sdap && kind == wire::BearerKind::Srb) {
            continue;
        }
        if (!node::supports_layer(rat, layer)) {
            continue;
        }
        std::string blob = std::string(node::to_string(rat)) + '/' + std::string(layer_name(layer)) +
                           (kind == wire::BearerKind::Srb ? "/srb" : "/drb");
        out.push_back({static_cast<std::uint16_t>(layer), to_bytes(blob)});
    }
    return out;
}

SessionConfig build_session_config(const UeContext &ue, const PduSessionCtx &session, const NodeProfile &node,
                                   Ipv4Addr upf_ip) {
    SessionConfig out;
    auto drb_port = [&](std::uint8_t label) -> std::optional<PortId> {
        for (const auto &d : session.drbs) {
            if (d.label == label) {
                return d.radio_port_id;
            }
        }
        return std::nullopt;
    };
    for (const auto &flow : session.qos_flows) {
        if (!drb_port(flow.mapped_drb)) {
            throw Error(Errc::InvalidSession, "InvalidSession: flow " + std::to_string(flow.flow_id) +
                                                  " maps to missing DRB " + std::to_string(flow.mapped_drb));
        }
    }

    for (const auto &drb : session.drbs) {
        wire::RadioBearer radio{ue.crnti, drb.bearer_id, wire::BearerKind::Drb,
                                layer_config(node.rat, wire::BearerKind::Drb)};
        out.ports.push_back({wire::PortCommand::Create, drb.radio_port_id, radio});
    }
    wire::GtpTunnel gtp{node.ngu_ip, upf_ip, session.ngu_tunnel.udp_port, session.ngu_tunnel.teid};
    out.ports.push_back({wire::PortCommand::Create, session.ngu_tunnel.port_id, gtp});

    for (const auto &drb : session.drbs) {
        out.flows.push_back(flow_add(kDataPriority, radio_match(ue.crnti, drb.bearer_id), session.ngu_tunnel.port_id));
    }
    for (const auto &flow : session.qos_flows) {
        wire::FlowMatch m;
        m.ip_dst = flow.ip_dst;
        m.ip_proto = flow.ip_proto;
        m.l4_dst = flow.l4_dst;
        out.flows.push_back(flow_add(kDataPriority, m, *drb_port(flow.mapped_drb)));
    }
    return out;
}

bool admit_below_cap(const AdmissionRequest &req) { return req.ues_on_node < req.cap; }

Controller::Controller(ControllerConfig config, AdmissionPolicy policy)
    : config_(config), policy_(std::move(policy)) {}

void Controller::add_node(const NodeProfile &profile) {
    NodeState state;
    state.profile = profile;
    nodes_.insert_or_assign(profile.node_id, std::move(state));
}

Controller::NodeState &Controller::node_state(NodeId node_id) {
    auto it = nodes_.find(node_id);
    if (it == nodes_.end()) {
        throw Error(Errc::UnknownNode, "UnknownNode: " + std::to_string(node_id));
    }
    return it->second;
}

UeContext &Controller::ue_for(std::uint32_t ran_ue_id) {
    auto it = ues_.find(ran_ue_id);
    if (it == ues_.end()) {
        throw Error(Errc::UnknownUe, "UnknownUe: " + std::to_string(ran_ue_id));
    }
    return it->second;
}

const UeContext *Controller::find_ue(std::uint32_t ran_ue_id) const {
    auto it = ues_.find(ran_ue_id);
    return it == ues_.end() ? nullptr : &it->second;
}

const UeContext *Controller::find_ue_by_tmp_id(NodeId node_id, std::uint32_t ue_tmp_id) const {
    for (const auto &[id, ue] : ues_) {
        if (ue.serving_node_id == node_id && ue.ue_tmp_id == ue_tmp_id) {
            return &ue;
        }
    }
    return nullptr;
}

std::size_t Controller::ue_count(NodeId node_id) const {
    return static_cast<std::size_t>(std::count_if(ues_.begin(), ues_.end(), [&](const auto &kv) {
        return kv.second.serving_node_id == node_id && !kv.second.failed;
    }));
}

std::optional<Srb> Controller::channel_of_tunnel(TunnelId tunnel_id) const {
    auto it = tunnels_.find(tunnel_id);
    if (it == tunnels_.end()) {
        return std::nullopt;
    }
    return it->second.srb;
}

bool Controller::admit_ue(NodeId node_id, std::uint32_t ue_tmp_id) const {
    AdmissionRequest req{node_id, ue_tmp_id, ue_count(node_id), config_.admission_cap};
    return policy_(req);
}

ConfigBatch Controller::make_batch(NodeState &node, std::optional<std::uint32_t> owner,
                                   const std::vector<wire::PortMod> &ports, const std::vector<wire::FlowMod> &flows) {
    ConfigBatch batch;
    batch.node_id = node.profile.node_id;
    auto push = [&](wire::MessageBody body) {
        wire::Message msg{node.next_xid++, std::move(body)};
        if (owner) {
            node.xid_owner[msg.xid] = *owner;
        }
        batch.messages.push_back(std::move(msg));
    };
    for (const auto &pm : ports) {
        push(pm);
    }
    for (const auto &fm : flows) {
        push(fm);
    }
    return batch;
}

SrbCtx Controller::allocate_srb(NodeState &node, Srb srb, BearerId bearer_id, std::optional<std::uint32_t> ran_ue_id) {
    SrbCtx ctx;
    ctx.bearer_id = bearer_id;
    ctx.radio_port = node.next_port_id++;
    ctx.sig_port = node.next_port_id++;
    ctx.tunnel_id = next_tunnel_id_++;
    tunnels_[ctx.tunnel_id] = TunnelBinding{node.profile.node_id, srb, ran_ue_id};
    return ctx;
}

std::pair<std::vector<wire::PortMod>, std::vector<wire::FlowMod>>
Controller::srb_config(const NodeState &node, Crnti crnti, const SrbCtx &srb, std::uint16_t priority) const {
    wire::RadioBearer radio{crnti, srb.bearer_id, wire::BearerKind::Srb,
                            layer_config(node.profile.rat, wire::BearerKind::Srb)};
    wire::SigTunnel sig{config_.src_ip, srb.tunnel_id};
    std::vector<wire::PortMod> ports{
        {wire::PortCommand::Create, srb.radio_port, radio},
        {wire::PortCommand::Create, srb.sig_port, sig},
    };
    std::vector<wire::FlowMod> flows{
        flow_add(priority, radio_match(crnti, srb.bearer_id), srb.sig_port),
        flow_add(priority, in_port_match(srb.sig_port), srb.radio_port),
    };
    return {std::move(ports), std::move(flows)};
}

ConfigBatch Controller::bootstrap_node(NodeId node_id) {
    auto &node = node_state(node_id);
    if (node.bootstrapped) {
        throw Error(Errc::AlreadyBootstrapped, "AlreadyBootstrapped: node " + std::to_string(node_id));
    }
    node.bootstrapped = true;
    node.srb0 = allocate_srb(node, Srb::Srb0, wire::kSrb0BearerId, std::nullopt);
    auto [ports, flows] = srb_config(node, wire::kCommonCrnti, node.srb0, kCommonSignalingPriority);
    return make_batch(node, std::nullopt, ports, flows);
}

RrcDownlink Controller::rrc_downlink(const UeContext &ue, Srb srb, RrcMessage msg) const {
    RrcDownlink out;
    out.node_id = ue.serving_node_id;
    out.srb = srb;
    Bytes payload = encode_rrc(msg);
    if (srb == Srb::Srb0) {
        out.tunnel_id = nodes_.at(ue.serving_node_id).srb0.tunnel_id;
        payload = wire::wrap_srb0(ue.ue_tmp_id, payload);
    } else {
        out.tunnel_id = ue.srbs.at(srb).tunnel_id;
    }
    out.frame = wire::encap_sig(payload, out.tunnel_id);
    out.message = std::move(msg);
    return out;
}

std::vector<Emission> Controller::on_sig_uplink(NodeId node_id, ByteView frame) {
    auto sig = wire::decap_sig(frame);
    auto channel = channel_of_tunnel(sig.tunnel_id);
    if (!channel) {
        throw Error(Errc::UnknownTunnel, "UnknownTunnel: " + std::to_string(sig.tunnel_id));
    }
    if (*channel == Srb::Srb0) {
        auto env = wire::unwrap_srb0(sig.payload);
        return on_rrc_uplink(node_id, sig.tunnel_id, env.ue_tmp_id, decode_rrc(env.message));
    }
    return on_rrc_uplink(node_id, sig.tunnel_id, std::nullopt, decode_rrc(sig.payload));
}

std::vector<Emission> Controller::on_rrc_uplink(NodeId node_id, TunnelId tunnel_id,
                                                std::optional<std::uint32_t> ue_tmp_id, const RrcMessage &rrc) {
    auto binding = tunnels_.find(tunnel_id);
    if (binding == tunnels_.end() || binding->second.node_id != node_id) {
        throw Error(Errc::UnknownTunnel, "UnknownTunnel: " + std::to_string(tunnel_id));
    }
    if (!is_uplink(rrc)) {
        violation(std::string(rrc_name(rrc)) + " is not an uplink message");
    }
    auto &node = node_state(node_id);

    if (binding->second.srb == Srb::Srb0) {
        if (!std::holds_alternative<RrcSetupRequest>(rrc)) {
            violation(std::string(rrc_name(rrc)) + " on SRB0");
        }
        if (!ue_tmp_id) {
            violation("SRB0 message without UE envelope");
        }
        return on_setup_request(node, *ue_tmp_id);
    }

    auto &ue = ue_for(*binding->second.ran_ue_id);
    if (ue.failed) {
        violation("UE " + std::to_string(ue.ran_ue_id) + " procedure was aborted");
    }
    if (binding->second.srb != Srb::Srb1) {
        violation(std::string(rrc_name(rrc)) + " on SRB2");
    }

    std::vector<Emission> out;
    if (std::holds_alternative<RrcSetupComplete>(rrc)) {
        if (ue.rrc_state != RrcState::SetupRequested) {
            violation("RRCSetupComplete in state " + std::string(to_string(ue.rrc_state)));
        }
        ue.rrc_state = RrcState::Connected;
        const auto &complete = std::get<RrcSetupComplete>(rrc);
        out.push_back(NgapOut{InitialUeMessage{ue.ran_ue_id, complete.nas_payload}});
    } else if (std::holds_alternative<SecurityModeComplete>(rrc)) {
        if (ue.rrc_state != RrcState::Connected || !ue.security_mode_sent) {
            violation("SecurityModeComplete before SecurityModeCommand");
        }
        ue.rrc_state = RrcState::Secured;
        RrcReconfiguration reconf;
        reconf.srb2_bearer_id = ue.srbs.at(Srb::Srb2).bearer_id;
        for (const auto &session : ue.pdu_sessions) {
            for (const auto &drb : session.drbs) {
                reconf.drb_bearer_ids.push_back(drb.bearer_id);
            }
        }
        out.push_back(rrc_downlink(ue, Srb::Srb1, std::move(reconf)));
    } else if (std::holds_alternative<RrcReconfigurationComplete>(rrc)) {
        if (ue.rrc_state != RrcState::Secured) {
            violation("RRCReconfigurationComplete in state " + std::string(to_string(ue.rrc_state)));
        }
        ue.rrc_state = RrcState::Configured;
        InitialContextSetupResponse resp;
        resp.ran_ue_id = ue.ran_ue_id;
        for (const auto &session : ue.pdu_sessions) {
            resp.sessions.push_back({session.session_id, session.ngu_tunnel.teid, node.profile.ngu_ip});
        }
        out.push_back(NgapOut{std::move(resp)});
    } else {
        violation(std::string(rrc_name(rrc)) + " on SRB1");
    }
    return out;
}

std::vector<Emission> Controller::on_setup_request(NodeState &node, std::uint32_t ue_tmp_id) {
    const NodeId node_id = node.profile.node_id;
    if (const auto *existing = find_ue_by_tmp_id(node_id, ue_tmp_id); existing && !existing->failed) {
        violation("RRCSetupRequest from UE " + std::to_string(ue_tmp_id) + " that is already known");
    }
    if (!admit_ue(node_id, ue_tmp_id)) {
        return {};
    }

    UeContext ue;
    ue.ran_ue_id = next_ran_ue_id_++;
    ue.ue_tmp_id = ue_tmp_id;
    ue.crnti = node.next_crnti++;
    ue.serving_node_id = node_id;
    ue.srbs[Srb::Srb1] = allocate_srb(node, Srb::Srb1, wire::kSrb1BearerId, ue.ran_ue_id);
    ue.rrc_state = RrcState::SetupRequested;

    auto [ports, flows] = srb_config(node, ue.crnti, ue.srbs[Srb::Srb1], kDedicatedSignalingPriority);
    std::vector<Emission> out;
    out.push_back(make_batch(node, ue.ran_ue_id, ports, flows));
    out.push_back(rrc_downlink(ue, Srb::Srb0, RrcSetup{ue.crnti, wire::kSrb1BearerId}));
    ues_.emplace(ue.ran_ue_id, std::move(ue));
    return out;
}

std::vector<Emission> Controller::on_ngap(const NgapMessage &msg) {
    if (const auto *req = std::get_if<InitialContextSetupRequest>(&msg)) {
        return on_context_setup(*req);
    }
    violation(std::string(ngap_name(msg)) + " is not sent by the AMF");
}

std::vector<Emission> Controller::on_context_setup(const InitialContextSetupRequest &req) {
    auto &ue = ue_for(req.ran_ue_id);
    if (ue.failed || ue.rrc_state != RrcState::Connected || ue.security_mode_sent) {
        violation("InitialContextSetupRequest in state " + std::string(to_string(ue.rrc_state)));
    }
    auto &node = node_state(ue.serving_node_id);

    // Validate everything before any identifier is consumed.
    std::size_t drb_total = 0;
    for (const auto &spec : req.sessions) {
        std::set<std::uint8_t> labels(spec.drbs.begin(), spec.drbs.end());
        if (labels.size() != spec.drbs.size()) {
            throw Error(Errc::InvalidSession, "InvalidSession: duplicate DRB label in session " +
                                                  std::to_string(spec.session_id));
        }
        for (const auto &flow : spec.flows) {
            if (!labels.contains(flow.drb)) {
                throw Error(Errc::InvalidSession, "InvalidSession: flow " + std::to_string(flow.flow_id) +
                                                      " maps to missing DRB " + std::to_string(flow.drb));
            }
        }
        drb_total += spec.drbs.size();
    }
    if (drb_total > wire::kMaxBearerId - 2) {
        throw Error(Errc::InvalidSession, "InvalidSession: too many DRBs");
    }

    BearerId next_bearer = 1;
    auto allocate_bearer = [&next_bearer] {
        while (is_srb_bearer(next_bearer)) {
            ++next_bearer;
        }
        return next_bearer++;
    };

    std::vector<wire::PortMod> ports;
    std::vector<wire::FlowMod> flows;
    for (const auto &spec : req.sessions) {
        PduSessionCtx session;
        session.session_id = spec.session_id;
        for (auto label : spec.drbs) {
            session.drbs.push_back({label, allocate_bearer(), node.next_port_id++});
        }
        for (const auto &f : spec.flows) {
            session.qos_flows.push_back({f.flow_id, f.ip_dst, f.ip_proto, f.l4_dst, f.drb});
        }
        session.ngu_tunnel.teid = next_teid_++;
        session.ngu_tunnel.port_id = node.next_port_id++;
        auto config = build_session_config(ue, session, node.profile, config_.upf_ip);
        ports.insert(ports.end(), config.ports.begin(), config.ports.end());
        flows.insert(flows.end(), config.flows.begin(), config.flows.end());
        ue.pdu_sessions.push_back(std::move(session));
    }

    ue.srbs[Srb::Srb2] = allocate_srb(node, Srb::Srb2, wire::kSrb2BearerId, ue.ran_ue_id);
    auto [srb2_ports, srb2_flows] = srb_config(node, ue.crnti, ue.srbs[Srb::Srb2], kDedicatedSignalingPriority);
    ports.insert(ports.end(), srb2_ports.begin(), srb2_ports.end());
    flows.insert(flows.end(), srb2_flows.begin(), srb2_flows.end());

    ue.security_info = req.security_info;
    ue.security_mode_sent = true;

    std::vector<Emission> out;
    out.push_back(make_batch(node, ue.ran_ue_id, ports, flows));
    out.push_back(rrc_downlink(ue, Srb::Srb1, SecurityModeCommand{ue.security_info}));
    return out;
}

void Controller::on_node_error(NodeId node_id, ByteView open5g_bytes) {
    auto msg = wire::decode(open5g_bytes);
    if (!std::holds_alternative<wire::ErrorBody>(msg.body)) {
        return;
    }
    auto &node = node_state(node_id);
    auto owner = node.xid_owner.find(msg.xid);
    if (owner == node.xid_owner.end()) {
        return;
    }
    if (auto it = ues_.find(owner->second); it != ues_.end()) {
        it->second.failed = true;
    }
}

} // namespace open5g::ctrl
