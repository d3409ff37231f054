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

#include "open5g/node/dataplane_node.hpp"

#include <algorithm>

#include "open5g/detail/overloaded.hpp"
#include "open5g/wire/codec.hpp"
#include "open5g/wire/framing.hpp"
#include "open5g/wire/tunnel.hpp"

namespace open5g::node {

namespace {

using detail::overloaded;

constexpr std::size_t kErrorDetailMax = 64;

} // namespace

std::string_view to_string(Rat rat) {
    switch (rat) {
    case Rat::Nr: return "NR";
    case Rat::Lte: return "LTE";
    case Rat::Wlan: return "WLAN";
    }
    return "?";
}

std::optional<Rat> parse_rat(std::string_view text) {
    if (text == "NR") {
        return Rat::Nr;
    }
    if (text == "LTE") {
        return Rat::Lte;
    }
    if (text == "WLAN") {
        return Rat::Wlan;
    }
    return std::nullopt;
}

bool supports_layer(Rat rat, wire::LayerType layer) {
    switch (layer) {
    case wire::LayerType::Mac:
    case wire::LayerType::Phy:
        return true;
    case wire::LayerType::Sdap:
        return rat == Rat::Nr;
    case wire::LayerType::Pdcp:
    case wire::LayerType::Rlc:
        return rat != Rat::Wlan;
    case wire::LayerType::Gtp:
        return false;
    }
    return false;
}

std::vector<Emission> DataplaneNode::handle_open5g(ByteView data) {
    std::vector<Emission> out;
    auto split = wire::split_stream(data);
    for (auto bytes : split.messages) {
        try {
            apply(wire::decode(bytes));
            ++counters_.commands_applied;
        } catch (const Error &e) {
            out.push_back(error_message(e.code(), bytes));
        }
    }
    if (split.framing_error) {
        out.push_back(error_message(*split.framing_error, split.remainder));
    }
    return out;
}

void DataplaneNode::apply(const wire::Message &msg) {
    std::visit(overloaded{
                   [](const wire::Hello &) {},
                   [](const wire::ErrorBody &) {},
                   [&](const wire::PortMod &pm) {
                       if (pm.spec) {
                           if (const auto *radio = std::get_if<wire::RadioBearer>(&*pm.spec)) {
                               for (const auto &tlv : radio->layer_config) {
                                   if (!supports_layer(desc_.rat, static_cast<wire::LayerType>(tlv.type))) {
                                       throw Error(Errc::UnsupportedLayer,
                                                   "UnsupportedLayer: TLV type " + std::to_string(tlv.type) +
                                                       " on " + std::string(to_string(desc_.rat)));
                                   }
                               }
                           }
                       }
                       datapath_.apply_port_mod(pm);
                   },
                   [&](const wire::FlowMod &fm) { datapath_.apply_flow_mod(fm); },
               },
               msg.body);
}

Emission DataplaneNode::error_message(Errc code, ByteView offending) {
    ++counters_.errors_sent;
    wire::Message msg;
    if (offending.size() >= wire::kHeaderSize) {
        msg.xid = ByteReader(offending.subspan(4, 4), Errc::Truncated).u32();
    }
    auto detail = offending.first(std::min(offending.size(), kErrorDetailMax));
    msg.body = wire::ErrorBody{static_cast<std::uint16_t>(code), Bytes(detail.begin(), detail.end())};
    return ControllerMessage{wire::encode(msg)};
}

std::nullopt_t DataplaneNode::drop() {
    ++counters_.drops;
    return std::nullopt;
}

std::optional<Emission> DataplaneNode::ingress_radio(wire::Crnti crnti, wire::BearerId bearer_id, ByteView payload) {
    ++counters_.packets_in;
    sw::PacketContext ctx;
    ctx.ingress = sw::PacketContext::Radio{crnti, bearer_id};
    ctx.in_port = datapath_.ports().find_radio(crnti, bearer_id);
    ctx.payload.assign(payload.begin(), payload.end());
    return forward(std::move(ctx));
}

std::optional<Emission> DataplaneNode::ingress_ngu(ByteView frame) {
    ++counters_.packets_in;
    wire::GtpuFrame gtpu;
    try {
        gtpu = wire::decap_gtpu(frame);
    } catch (const Error &) {
        return drop();
    }
    sw::PacketContext ctx;
    ctx.ingress = sw::PacketContext::Ngu{wire::kGtpuUdpPort, gtpu.teid};
    ctx.in_port = datapath_.ports().find_gtp(wire::kGtpuUdpPort, gtpu.teid);
    if (!ctx.in_port) {
        return drop();
    }
    if (auto inner = wire::parse_pseudo_ip(gtpu.payload)) {
        ctx.ip_dst = inner->ip_dst;
        ctx.ip_proto = inner->ip_proto;
        ctx.l4_dst = inner->l4_dst;
    }
    ctx.payload = std::move(gtpu.payload);
    return forward(std::move(ctx));
}

std::optional<Emission> DataplaneNode::ingress_sigtunnel(ByteView frame) {
    ++counters_.packets_in;
    wire::SigTunnelFrame sig;
    try {
        sig = wire::decap_sig(frame);
    } catch (const Error &) {
        return drop();
    }
    sw::PacketContext ctx;
    ctx.ingress = sw::PacketContext::Sig{sig.tunnel_id};
    ctx.in_port = datapath_.ports().find_sig(sig.tunnel_id);
    if (!ctx.in_port) {
        return drop();
    }
    ctx.payload = std::move(sig.payload);
    return forward(std::move(ctx));
}

std::optional<Emission> DataplaneNode::forward(sw::PacketContext ctx) {
    auto action = datapath_.match(ctx);
    if (!action) {
        return drop();
    }
    const auto *port = datapath_.ports().find(action->out_port);
    if (port == nullptr) {
        return drop();
    }
    std::optional<Emission> out = std::visit(
        overloaded{
            [&](const wire::RadioBearer &r) -> std::optional<Emission> {
                RadioDelivery d{r.crnti, r.bearer_id, std::nullopt, {}};
                if (r.crnti == wire::kCommonCrnti) {
                    try {
                        d.ue_tmp_id = wire::unwrap_srb0(ctx.payload).ue_tmp_id;
                    } catch (const Error &) {
                        return std::nullopt;
                    }
                }
                d.payload = std::move(ctx.payload);
                return d;
            },
            [&](const wire::GtpTunnel &g) -> std::optional<Emission> {
                if (ctx.payload.size() > 0xffff) {
                    return std::nullopt;
                }
                return NguFrame{g.remote_ip, g.udp_port, g.teid, wire::encap_gtpu(ctx.payload, g.teid)};
            },
            [&](const wire::SigTunnel &s) -> std::optional<Emission> {
                if (ctx.payload.size() > 0xffff) {
                    return std::nullopt;
                }
                return SigUplink{s.tunnel_id, wire::encap_sig(ctx.payload, s.tunnel_id)};
            },
        },
        port->spec);
    if (!out) {
        return drop();
    }
    ++counters_.packets_out;
    return out;
}

} // namespace open5g::node
