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

#include "open5g/switch/port_registry.hpp"

#include "open5g/detail/overloaded.hpp"

#include "open5g/error.hpp"

namespace open5g::sw {

namespace {

using detail::overloaded;

template <class Map, class Key>
std::optional<PortId> lookup(const Map &map, const Key &key) {
    auto it = map.find(key);
    if (it == map.end()) {
        return std::nullopt;
    }
    return it->second;
}

} // namespace

std::string describe(const LogicalPort &port) {
    std::string out = "port-" + std::to_string(port.port_id) + ' ';
    out += std::visit(overloaded{
                          [](const wire::RadioBearer &r) {
                              return "radio(crnti=" + std::to_string(r.crnti) +
                                     ",bearer_id=" + std::to_string(r.bearer_id) +
                                     (r.kind == wire::BearerKind::Srb ? ",SRB)" : ",DRB)");
                          },
                          [](const wire::GtpTunnel &g) {
                              return "gtp(udp_port=" + std::to_string(g.udp_port) +
                                     ",teid=" + std::to_string(g.teid) + ")";
                          },
                          [](const wire::SigTunnel &s) {
                              return "sig(tunnel_id=" + std::to_string(s.tunnel_id) + ")";
                          },
                      },
                      port.spec);
    return out;
}

std::optional<LogicalPort> PortRegistry::apply(const wire::PortMod &body) {
    auto existing = ports_.find(body.port_id);
    switch (body.command) {
    case wire::PortCommand::Create: {
        if (existing != ports_.end()) {
            throw Error(Errc::DuplicatePort, "DuplicatePort: port-" + std::to_string(body.port_id));
        }
        if (!body.spec) {
            throw Error(Errc::InvalidMessage, "InvalidMessage: CREATE without port spec");
        }
        check_unique(body.port_id, *body.spec);
        LogicalPort port{body.port_id, *body.spec, PortState::Active};
        index(port);
        ports_.emplace(port.port_id, std::move(port));
        return std::nullopt;
    }
    case wire::PortCommand::Modify: {
        if (existing == ports_.end()) {
            throw Error(Errc::UnknownPort, "UnknownPort: port-" + std::to_string(body.port_id));
        }
        if (!body.spec) {
            throw Error(Errc::InvalidMessage, "InvalidMessage: MODIFY without port spec");
        }
        check_unique(body.port_id, *body.spec);
        unindex(existing->second);
        existing->second.spec = *body.spec;
        index(existing->second);
        return std::nullopt;
    }
    case wire::PortCommand::Delete: {
        if (existing == ports_.end()) {
            throw Error(Errc::UnknownPort, "UnknownPort: port-" + std::to_string(body.port_id));
        }
        LogicalPort removed = std::move(existing->second);
        unindex(removed);
        ports_.erase(existing);
        removed.state = PortState::Deleted;
        return removed;
    }
    }
    return std::nullopt;
}

const LogicalPort *PortRegistry::find(PortId id) const {
    auto it = ports_.find(id);
    return it == ports_.end() ? nullptr : &it->second;
}

std::optional<PortId> PortRegistry::find_radio(Crnti crnti, BearerId bearer_id) const {
    return lookup(radio_, std::pair{crnti, bearer_id});
}

std::optional<PortId> PortRegistry::find_gtp(std::uint16_t udp_port, Teid teid) const {
    return lookup(gtp_, std::pair{udp_port, teid});
}

std::optional<PortId> PortRegistry::find_sig(TunnelId tunnel_id) const {
    return lookup(sig_, tunnel_id);
}

void PortRegistry::check_unique(PortId self, const wire::PortSpec &spec) const {
    auto clash = [self](std::optional<PortId> other) { return other && *other != self; };
    std::visit(overloaded{
                   [&](const wire::RadioBearer &r) {
                       if (clash(find_radio(r.crnti, r.bearer_id))) {
                           throw Error(Errc::DuplicateBearer, "DuplicateBearer: crnti=" + std::to_string(r.crnti) +
                                                                  " bearer_id=" + std::to_string(r.bearer_id));
                       }
                   },
                   [&](const wire::GtpTunnel &g) {
                       if (clash(find_gtp(g.udp_port, g.teid))) {
                           throw Error(Errc::DuplicatePort, "DuplicatePort: teid=" + std::to_string(g.teid));
                       }
                   },
                   [&](const wire::SigTunnel &s) {
                       if (clash(find_sig(s.tunnel_id))) {
                           throw Error(Errc::DuplicatePort,
                                       "DuplicatePort: tunnel_id=" + std::to_string(s.tunnel_id));
                       }
                   },
               },
               spec);
}

void PortRegistry::index(const LogicalPort &port) {
    std::visit(overloaded{
                   [&](const wire::RadioBearer &r) { radio_[{r.crnti, r.bearer_id}] = port.port_id; },
                   [&](const wire::GtpTunnel &g) { gtp_[{g.udp_port, g.teid}] = port.port_id; },
                   [&](const wire::SigTunnel &s) { sig_[s.tunnel_id] = port.port_id; },
               },
               port.spec);
}

void PortRegistry::unindex(const LogicalPort &port) {
    std::visit(overloaded{
                   [&](const wire::RadioBearer &r) { radio_.erase({r.crnti, r.bearer_id}); },
                   [&](const wire::GtpTunnel &g) { gtp_.erase({g.udp_port, g.teid}); },
                   [&](const wire::SigTunnel &s) { sig_.erase(s.tunnel_id); },
               },
               port.spec);
}

} // namespace open5g::sw
