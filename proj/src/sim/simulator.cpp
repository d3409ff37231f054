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

#include "open5g/sim/simulator.hpp"

#include <map>
#include <random>
#include <set>

#include "open5g/detail/overloaded.hpp"
#include "open5g/wire/codec.hpp"
#include "open5g/wire/framing.hpp"
#include "open5g/wire/tunnel.hpp"

namespace open5g::sim {

using detail::overloaded;

namespace {

std::map<std::string, std::vector<ctrl::PduSessionSpec>> session_specs(const Topology &topology) {
    std::map<std::string, std::vector<ctrl::PduSessionSpec>> out;
    for (const auto &u : topology.ues) {
        out[u.name] = u.sessions;
    }
    return out;
}

ctrl::ControllerConfig controller_config(const Settings &settings) {
    ctrl::ControllerConfig cfg;
    cfg.src_ip = settings.src_ip;
    cfg.upf_ip = settings.upf_ip;
    cfg.admission_cap = settings.admission_cap;
    return cfg;
}

Bytes radio_digest_bytes(wire::Crnti crnti, wire::BearerId bearer_id, ByteView payload) {
    ByteWriter w;
    w.u16(crnti);
    w.u8(bearer_id);
    w.raw(payload);
    return std::move(w).take();
}

Channel radio_channel(wire::BearerId bearer_id) {
    switch (bearer_id) {
    case wire::kSrb0BearerId: return Channel::Srb0;
    case wire::kSrb1BearerId: return Channel::Srb1;
    case wire::kSrb2BearerId: return Channel::Srb2;
    default: return Channel::RadioData;
    }
}

std::string rrc_kind(ByteView payload, bool enveloped) {
    try {
        if (enveloped) {
            auto env = wire::unwrap_srb0(payload);
            return std::string(ctrl::rrc_name(ctrl::decode_rrc(env.message)));
        }
        return std::string(ctrl::rrc_name(ctrl::decode_rrc(payload)));
    } catch (const Error &) {
        return "Malformed";
    }
}

} // namespace

std::string batch_kind(ByteView open5g_bytes) {
    auto split = wire::split_stream(open5g_bytes);
    std::string out;
    std::string_view last;
    std::size_t run = 0;
    auto flush = [&] {
        if (run == 0) {
            return;
        }
        if (!out.empty()) {
            out += '+';
        }
        out += last;
        out += 'x';
        out += std::to_string(run);
    };
    for (auto msg : split.messages) {
        auto name = wire::to_string(static_cast<wire::MsgType>(msg[1]));
        if (name != last) {
            flush();
            last = name;
            run = 0;
        }
        ++run;
    }
    flush();
    if (split.framing_error) {
        out += out.empty() ? "Malformed" : "+Malformed";
    }
    return out.empty() ? "EMPTY" : out;
}

Simulator::Simulator(Topology topology, Script script, Settings settings)
    : topology_(std::move(topology)), settings_(settings), controller_(controller_config(settings)),
      core_(session_specs(topology_), topology_.seed) {
    validate(topology_, script);

    for (std::size_t i = 0; i < topology_.nodes.size(); ++i) {
        const auto &spec = topology_.nodes[i];
        auto id = static_cast<node::NodeId>(i + 1);
        nodes_.emplace_back(node::NodeDescriptor{id, spec.rat, spec.ngu_ip});
        controller_.add_node(ctrl::NodeProfile{id, spec.rat, spec.ngu_ip});
    }

    std::mt19937_64 rng(topology_.seed);
    std::set<std::uint32_t> taken;
    for (const auto &u : topology_.ues) {
        std::uint32_t tmp = 0;
        while (tmp == 0 || !taken.insert(tmp).second) {
            tmp = static_cast<std::uint32_t>(rng());
        }
        ues_.emplace_back(u.name, tmp);
        ue_node_.push_back(*topology_.node_index(u.attach));
    }

    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        auto batch = controller_.bootstrap_node(static_cast<node::NodeId>(i + 1));
        auto bytes = batch.encode();
        auto kind = batch_kind(bytes);
        schedule(1, ToNodeOpen5g{i, std::move(bytes), std::move(kind)});
    }
    for (auto &s : script) {
        auto at = s.at;
        schedule(at, Stimulate{std::move(s)});
    }
}

Simulator::~Simulator() = default;

const node::DataplaneNode &Simulator::node(std::string_view name) const {
    auto idx = topology_.node_index(name);
    if (!idx) {
        throw Error(Errc::UnknownNode, "UnknownNode: " + std::string(name));
    }
    return nodes_[*idx];
}

const UeAgent &Simulator::ue(std::string_view name) const {
    auto idx = topology_.ue_index(name);
    if (!idx) {
        throw Error(Errc::UnknownUe, "UnknownUe: " + std::string(name));
    }
    return ues_[*idx];
}

void Simulator::schedule(std::uint64_t at, Payload payload) {
    queue_.push(Event{at, next_seq_++, std::move(payload)});
}

void Simulator::record(std::string src, std::string dst, Channel channel, std::string kind, ByteView bytes) {
    TraceRecord r;
    r.step_no = trace_.records.size() + 1;
    r.time = now_;
    r.src = std::move(src);
    r.dst = std::move(dst);
    r.channel = channel;
    r.kind = std::move(kind);
    r.digest = fnv1a64(bytes);
    trace_.records.push_back(std::move(r));
}

void Simulator::run(std::optional<std::uint64_t> stop_after_step) {
    while (!queue_.empty()) {
        if (stop_after_step && trace_.records.size() >= *stop_after_step) {
            return;
        }
        if (stats_.events >= settings_.max_events) {
            throw Error(Errc::BudgetExceeded,
                        "BudgetExceeded: more than " + std::to_string(settings_.max_events) + " events");
        }
        auto ev = queue_.top();
        queue_.pop();
        ++stats_.events;
        now_ = ev.time;
        dispatch(ev.payload);
    }
}

void Simulator::dispatch(Payload &payload) {
    std::visit([this](auto &ev) { handle(ev); }, payload);
}

// --- node inputs -------------------------------------------------------------

void Simulator::handle(ToNodeOpen5g &ev) {
    record(std::string(kControllerName), topology_.nodes[ev.node].name, Channel::Open5g, ev.kind, ev.bytes);
    for (auto &out : nodes_[ev.node].handle_open5g(ev.bytes)) {
        node_output(ev.node, std::move(out));
    }
}

void Simulator::handle(ToNodeSig &ev) {
    std::string kind = "Malformed";
    try {
        auto sig = wire::decap_sig(ev.frame);
        kind = rrc_kind(sig.payload, ev.channel == Channel::Srb0);
    } catch (const Error &) {
    }
    record(std::string(kControllerName), topology_.nodes[ev.node].name, ev.channel, kind, ev.frame);
    auto before = nodes_[ev.node].drop_count();
    auto out = nodes_[ev.node].ingress_sigtunnel(ev.frame);
    stats_.signaling_drops += nodes_[ev.node].drop_count() - before;
    node_output(ev.node, std::move(out));
}

void Simulator::handle(ToNodeNgu &ev) {
    record(std::string(kUpfName), topology_.nodes[ev.node].name, Channel::Ngu, "GTP-U", ev.frame);
    auto before = nodes_[ev.node].drop_count();
    auto out = nodes_[ev.node].ingress_ngu(ev.frame);
    stats_.dl_node_drops += nodes_[ev.node].drop_count() - before;
    node_output(ev.node, std::move(out));
}

void Simulator::handle(ToNodeRadio &ev) {
    auto channel = ev.data ? Channel::RadioData : radio_channel(ev.tx.bearer_id);
    auto kind = ev.data ? std::string("DATA") : rrc_kind(ev.tx.payload, ev.tx.bearer_id == wire::kSrb0BearerId);
    record(ues_[ev.ue].name(), topology_.nodes[ev.node].name, channel, kind,
           radio_digest_bytes(ev.tx.crnti, ev.tx.bearer_id, ev.tx.payload));
    auto before = nodes_[ev.node].drop_count();
    auto out = nodes_[ev.node].ingress_radio(ev.tx.crnti, ev.tx.bearer_id, ev.tx.payload);
    auto dropped = nodes_[ev.node].drop_count() - before;
    (ev.data ? stats_.ul_node_drops : stats_.signaling_drops) += dropped;
    node_output(ev.node, std::move(out));
}

void Simulator::node_output(std::size_t node, std::optional<node::Emission> out) {
    if (!out) {
        return;
    }
    std::visit(overloaded{
                   [&](node::ControllerMessage &m) { send(ToSrcOpen5g{node, std::move(m.bytes)}); },
                   [&](node::SigUplink &m) { send(ToSrcSig{node, std::move(m.frame)}); },
                   [&](node::NguFrame &m) { send(ToUpf{node, std::move(m.frame)}); },
                   [&](node::RadioDelivery &m) { send(ToUe{node, std::move(m)}); },
               },
               *out);
}

// --- controller inputs -------------------------------------------------------

Channel Simulator::sig_channel(wire::TunnelId tunnel_id) const {
    switch (controller_.channel_of_tunnel(tunnel_id).value_or(ctrl::Srb::Srb0)) {
    case ctrl::Srb::Srb0: return Channel::Srb0;
    case ctrl::Srb::Srb1: return Channel::Srb1;
    case ctrl::Srb::Srb2: return Channel::Srb2;
    }
    return Channel::Srb0;
}

void Simulator::handle(ToSrcSig &ev) {
    auto channel = Channel::Srb0;
    std::string kind = "Malformed";
    try {
        auto sig = wire::decap_sig(ev.frame);
        channel = sig_channel(sig.tunnel_id);
        kind = rrc_kind(sig.payload, channel == Channel::Srb0);
    } catch (const Error &) {
    }
    record(topology_.nodes[ev.node].name, std::string(kControllerName), channel, kind, ev.frame);
    try {
        controller_output(controller_.on_sig_uplink(static_cast<node::NodeId>(ev.node + 1), ev.frame));
    } catch (const Error &) {
        ++stats_.controller_rejects;
    }
}

void Simulator::handle(ToSrcOpen5g &ev) {
    record(topology_.nodes[ev.node].name, std::string(kControllerName), Channel::Open5g, batch_kind(ev.bytes),
           ev.bytes);
    controller_.on_node_error(static_cast<node::NodeId>(ev.node + 1), ev.bytes);
}

void Simulator::handle(ToSrcNgap &ev) {
    record(std::string(kAmfName), std::string(kControllerName), Channel::Ngap, std::string(ctrl::ngap_name(ev.msg)),
           ctrl::encode_ngap(ev.msg));
    try {
        controller_output(controller_.on_ngap(ev.msg));
    } catch (const Error &) {
        ++stats_.controller_rejects;
    }
}

void Simulator::controller_output(std::vector<ctrl::Emission> out) {
    for (auto &e : out) {
        std::visit(overloaded{
                       [&](ctrl::ConfigBatch &b) {
                           auto bytes = b.encode();
                           auto kind = batch_kind(bytes);
                           send(ToNodeOpen5g{node_of(b.node_id), std::move(bytes), std::move(kind)});
                       },
                       [&](ctrl::RrcDownlink &d) {
                           send(ToNodeSig{node_of(d.node_id), sig_channel(d.tunnel_id), std::move(d.frame)});
                       },
                       [&](ctrl::NgapOut &n) { send(ToAmf{std::move(n.message)}); },
                   },
                   e);
    }
}

// --- core --------------------------------------------------------------------

void Simulator::handle(ToAmf &ev) {
    record(std::string(kControllerName), std::string(kAmfName), Channel::Ngap, std::string(ctrl::ngap_name(ev.msg)),
           ctrl::encode_ngap(ev.msg));
    try {
        if (auto reply = core_.on_ngap(ev.msg)) {
            send(ToSrcNgap{std::move(*reply)});
        }
    } catch (const Error &) {
        ++stats_.controller_rejects;
    }
}

void Simulator::handle(ToUpf &ev) {
    record(topology_.nodes[ev.node].name, std::string(kUpfName), Channel::Ngu, "GTP-U", ev.frame);
    auto result = upf_uplink(ev.frame);
    std::visit(overloaded{
                   [&](UpfReceipt &r) {
                       ++stats_.ul_delivered;
                       upf_receipts_.push_back({topology_.nodes[ev.node].name, std::move(r)});
                   },
                   [&](BadFrame &) { ++stats_.ul_upf_drops; },
               },
               result);
}

std::optional<std::size_t> Simulator::node_by_ngu_ip(Ipv4Addr ip) const {
    for (std::size_t i = 0; i < topology_.nodes.size(); ++i) {
        if (topology_.nodes[i].ngu_ip == ip) {
            return i;
        }
    }
    return std::nullopt;
}

// --- UEs ---------------------------------------------------------------------

std::optional<std::size_t> Simulator::find_ue(std::size_t node, const node::RadioDelivery &delivery) const {
    for (std::size_t i = 0; i < ues_.size(); ++i) {
        if (ue_node_[i] != node) {
            continue;
        }
        if (delivery.ue_tmp_id) {
            if (ues_[i].ue_tmp_id() == *delivery.ue_tmp_id) {
                return i;
            }
        } else if (ues_[i].crnti() != 0 && ues_[i].crnti() == delivery.crnti) {
            return i;
        }
    }
    return std::nullopt;
}

void Simulator::handle(ToUe &ev) {
    const auto &d = ev.delivery;
    auto channel = radio_channel(d.bearer_id);
    auto idx = find_ue(ev.node, d);
    std::string dst = idx ? ues_[*idx].name() : "UE?";
    std::string kind = channel == Channel::RadioData ? std::string("DATA") : rrc_kind(d.payload, d.ue_tmp_id.has_value());
    record(topology_.nodes[ev.node].name, dst, channel, kind, radio_digest_bytes(d.crnti, d.bearer_id, d.payload));
    if (!idx) {
        (channel == Channel::RadioData ? stats_.dl_ue_drops : stats_.signaling_drops) += 1;
        return;
    }
    if (channel == Channel::RadioData) {
        ++stats_.dl_delivered;
        ue_receipts_.push_back({ues_[*idx].name(), d.bearer_id, d.payload});
        return;
    }
    if (auto reply = ues_[*idx].on_signaling(d.bearer_id, d.payload)) {
        send(ToNodeRadio{ev.node, *idx, std::move(*reply), false});
    }
}

void Simulator::handle(Stimulate &ev) {
    std::visit(overloaded{
                   [&](const PowerOn &p) {
                       auto idx = *topology_.ue_index(p.ue);
                       send(ToNodeRadio{ue_node_[idx], idx, ues_[idx].power_on(), false});
                   },
                   [&](const UplinkData &u) {
                       auto idx = *topology_.ue_index(u.ue);
                       ++stats_.ul_injected;
                       send(ToNodeRadio{ue_node_[idx], idx, ues_[idx].send_data(u.bearer_id, u.payload), true});
                   },
                   [&](const DownlinkData &d) {
                       ++stats_.dl_injected;
                       auto tunnel = core_.tunnel(d.ue, d.session_id);
                       auto node = tunnel ? node_by_ngu_ip(tunnel->gnb_ip) : std::nullopt;
                       if (!node) {
                           ++stats_.dl_upf_drops;
                           return;
                       }
                       send(ToNodeNgu{*node, upf_downlink(d.packet, tunnel->teid)});
                   },
               },
               ev.stimulus.action);
}

EventTrace run_scenario(const Topology &topology, const Script &script, const Settings &settings) {
    Simulator sim(topology, script, settings);
    sim.run();
    return sim.trace();
}

} // namespace open5g::sim
