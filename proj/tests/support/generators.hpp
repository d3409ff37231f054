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

// Random valid Open5G messages and flow tables for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "open5g/wire/message.hpp"

namespace open5g::gen {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng &rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline bool coin(Rng &rng) {
    return uniform(rng, 0, 1) == 1;
}

inline Bytes random_bytes(Rng &rng, std::size_t max_len) {
    Bytes out(uniform(rng, 0, max_len));
    for (auto &b : out) {
        b = static_cast<std::uint8_t>(uniform(rng, 0, 255));
    }
    return out;
}

inline Ipv4Addr random_ip(Rng &rng) {
    return Ipv4Addr(static_cast<std::uint32_t>(uniform(rng, 0, 0xffffffff)));
}

inline wire::RadioBearer random_radio(Rng &rng) {
    wire::RadioBearer r;
    switch (uniform(rng, 0, 3)) {
    case 0: // common SRB0 port
        r.crnti = wire::kCommonCrnti;
        r.bearer_id = wire::kSrb0BearerId;
        r.kind = wire::BearerKind::Srb;
        break;
    case 1:
        r.crnti = static_cast<wire::Crnti>(uniform(rng, 1, wire::kMaxCrnti));
        r.bearer_id = coin(rng) ? wire::kSrb1BearerId : wire::kSrb2BearerId;
        r.kind = wire::BearerKind::Srb;
        break;
    default: {
        r.crnti = static_cast<wire::Crnti>(uniform(rng, 1, wire::kMaxCrnti));
        wire::BearerId id = 0;
        while (id == 0 || id == wire::kSrb1BearerId || id == wire::kSrb2BearerId) {
            id = static_cast<wire::BearerId>(uniform(rng, 1, wire::kMaxBearerId));
        }
        r.bearer_id = id;
        r.kind = wire::BearerKind::Drb;
    }
    }
    auto n = uniform(rng, 0, 6);
    for (std::size_t i = 0; i < n; ++i) {
        r.layer_config.push_back({static_cast<std::uint16_t>(uniform(rng, 0, 0xffff)), random_bytes(rng, 24)});
    }
    return r;
}

inline wire::PortSpec random_port_spec(Rng &rng) {
    switch (uniform(rng, 0, 2)) {
    case 0: return random_radio(rng);
    case 1:
        return wire::GtpTunnel{random_ip(rng), random_ip(rng), static_cast<std::uint16_t>(uniform(rng, 0, 0xffff)),
                               static_cast<wire::Teid>(uniform(rng, 0, 0xffffffff))};
    default: return wire::SigTunnel{random_ip(rng), static_cast<wire::TunnelId>(uniform(rng, 0, 0xffffffff))};
    }
}

inline wire::FlowMatch random_match(Rng &rng) {
    wire::FlowMatch m;
    while (m.empty()) {
        if (coin(rng)) {
            m.in_port = static_cast<wire::PortId>(uniform(rng, 0, 0xffffffff));
        }
        if (coin(rng)) {
            m.crnti = static_cast<wire::Crnti>(uniform(rng, 0, 0xffff));
            m.bearer_id = static_cast<wire::BearerId>(uniform(rng, 0, 255));
        }
        if (coin(rng)) {
            m.ip_dst = random_ip(rng);
        }
        if (coin(rng)) {
            m.ip_proto = static_cast<std::uint8_t>(uniform(rng, 0, 255));
        }
        if (coin(rng)) {
            m.l4_dst = static_cast<std::uint16_t>(uniform(rng, 0, 0xffff));
        }
    }
    return m;
}

/// Covers every message type, port command and PortSpec variant.
inline wire::Message random_message(Rng &rng) {
    wire::Message msg;
    msg.xid = static_cast<std::uint32_t>(uniform(rng, 0, 0xffffffff));
    switch (uniform(rng, 0, 3)) {
    case 0: msg.body = wire::Hello{}; break;
    case 1: msg.body = wire::ErrorBody{static_cast<std::uint16_t>(uniform(rng, 0, 0xffff)), random_bytes(rng, 64)}; break;
    case 2: {
        wire::PortMod pm;
        pm.command = static_cast<wire::PortCommand>(uniform(rng, 0, 2));
        pm.port_id = static_cast<wire::PortId>(uniform(rng, 0, 0xffffffff));
        if (pm.command != wire::PortCommand::Delete) {
            pm.spec = random_port_spec(rng);
        }
        msg.body = std::move(pm);
        break;
    }
    default: {
        wire::FlowMod fm;
        fm.command = static_cast<wire::FlowCommand>(uniform(rng, 0, 1));
        fm.priority = static_cast<std::uint16_t>(uniform(rng, 0, 0xffff));
        fm.match = random_match(rng);
        fm.action.out_port = static_cast<wire::PortId>(uniform(rng, 0, 0xffffffff));
        msg.body = fm;
    }
    }
    return msg;
}

} // namespace open5g::gen
