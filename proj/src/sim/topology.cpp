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

#include "open5g/sim/topology.hpp"

#include <set>

namespace open5g::sim {

std::optional<std::size_t> Topology::node_index(std::string_view name) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> Topology::ue_index(std::string_view name) const {
    for (std::size_t i = 0; i < ues.size(); ++i) {
        if (ues[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

namespace {

[[noreturn]] void script_error(const std::string &what) {
    throw Error(Errc::ScriptError, "ScriptError: " + what);
}

} // namespace

void validate(const Topology &topology, const Script &script) {
    std::set<std::string> names;
    std::set<Ipv4Addr> ngu_ips;
    for (const auto &n : topology.nodes) {
        if (n.name.empty() || !names.insert(n.name).second) {
            script_error("duplicate or empty node name '" + n.name + "'");
        }
        if (!ngu_ips.insert(n.ngu_ip).second) {
            script_error("duplicate ngu_ip " + n.ngu_ip.to_string());
        }
    }
    for (const auto &u : topology.ues) {
        if (u.name.empty() || !names.insert(u.name).second) {
            script_error("duplicate or empty UE name '" + u.name + "'");
        }
        if (!topology.node_index(u.attach)) {
            script_error("UE " + u.name + " attaches to unknown node '" + u.attach + "'");
        }
    }
    for (const auto &s : script) {
        const auto &ue = std::visit([](const auto &a) -> const std::string & { return a.ue; }, s.action);
        if (!topology.ue_index(ue)) {
            script_error("stimulus at " + std::to_string(s.at) + " names unknown UE '" + ue + "'");
        }
        if (const auto *up = std::get_if<UplinkData>(&s.action)) {
            auto id = up->bearer_id;
            if (id == 0 || id > wire::kMaxBearerId || id == wire::kSrb1BearerId || id == wire::kSrb2BearerId) {
                script_error("uplink at " + std::to_string(s.at) + " on bearer " + std::to_string(id) +
                             ", which is not a DRB");
            }
        }
    }
}

} // namespace open5g::sim
