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
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "open5g/wire/message.hpp"

namespace open5g::sw {

using wire::BearerId;
using wire::Crnti;
using wire::PortId;
using wire::Teid;
using wire::TunnelId;

enum class PortState { Active, Deleted };

struct LogicalPort {
    PortId port_id = 0;
    wire::PortSpec spec;
    PortState state = PortState::Active;

    bool operator==(const LogicalPort &) const = default;
};

/// "port-7 gtp(udp_port=2152,teid=1)"
std::string describe(const LogicalPort &port);

/// Logical ports of one node, indexed by every identity the data path needs:
/// radio ports by (C-RNTI, bearer id), GTP ports by (UDP port, TEID) and
/// signaling-tunnel ports by tunnel id. Each identity is unique per node.
class PortRegistry {
public:
    /// Applies the command atomically: on error the registry is untouched.
    /// Returns the removed port (state Deleted) for DELETE.
    std::optional<LogicalPort> apply(const wire::PortMod &body);

    const LogicalPort *find(PortId id) const;
    std::optional<PortId> find_radio(Crnti crnti, BearerId bearer_id) const;
    std::optional<PortId> find_gtp(std::uint16_t udp_port, Teid teid) const;
    std::optional<PortId> find_sig(TunnelId tunnel_id) const;

    std::size_t size() const { return ports_.size(); }
    const std::map<PortId, LogicalPort> &ports() const { return ports_; }

    bool operator==(const PortRegistry &) const = default;

private:
    void check_unique(PortId self, const wire::PortSpec &spec) const;
    void index(const LogicalPort &port);
    void unindex(const LogicalPort &port);

    std::map<PortId, LogicalPort> ports_;
    std::map<std::pair<Crnti, BearerId>, PortId> radio_;
    std::map<std::pair<std::uint16_t, Teid>, PortId> gtp_;
    std::map<TunnelId, PortId> sig_;
};

} // namespace open5g::sw
