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

#include <optional>
#include <string>
#include <vector>

#include "open5g/switch/flow_table.hpp"
#include "open5g/switch/port_registry.hpp"
#include "open5g/wire/message.hpp"

namespace open5g::sw {

/// Port registry plus flow table of one data-plane node. Every command is
/// applied atomically: a throwing command leaves both untouched.
class Datapath {
public:
    /// DELETE cascades to flow entries that reference the removed port.
    void apply_port_mod(const wire::PortMod &body);
    /// ADD requires the output port to exist.
    void apply_flow_mod(const wire::FlowMod &body);

    std::optional<wire::FlowAction> match(const PacketContext &ctx) const { return table_.lookup(ctx); }

    const PortRegistry &ports() const { return ports_; }
    const FlowTable &table() const { return table_; }

    /// One line per entry in lookup order, e.g.
    /// "prio=300 crnti=61,bearer_id=1 -> OUTPUT port-7 gtp(udp_port=2152,teid=1)".
    std::vector<std::string> render_table() const;

    bool operator==(const Datapath &) const = default;

private:
    PortRegistry ports_;
    FlowTable table_;
};

} // namespace open5g::sw
