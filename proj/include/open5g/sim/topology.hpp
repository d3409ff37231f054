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
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "open5g/bytes.hpp"
#include "open5g/ctrl/messages.hpp"
#include "open5g/node/dataplane_node.hpp"
#include "open5g/wire/framing.hpp"

namespace open5g::sim {

struct NodeSpec {
    std::string name;
    node::Rat rat = node::Rat::Nr;
    Ipv4Addr ngu_ip;

    bool operator==(const NodeSpec &) const = default;
};

struct UeSpec {
    std::string name;
    /// Name of the node the UE camps on.
    std::string attach;
    /// Sessions the AMF hands out for this UE.
    std::vector<ctrl::PduSessionSpec> sessions;

    bool operator==(const UeSpec &) const = default;
};

/// Entities and their attachments. Links are implicit: every node talks to
/// the controller and the core, every UE to its node.
struct Topology {
    std::vector<NodeSpec> nodes;
    std::vector<UeSpec> ues;
    std::uint64_t seed = 1;

    std::optional<std::size_t> node_index(std::string_view name) const;
    std::optional<std::size_t> ue_index(std::string_view name) const;

    bool operator==(const Topology &) const = default;
};

struct Settings {
    std::uint32_t admission_cap = 8;
    std::uint64_t max_events = 100000;
    Ipv4Addr src_ip{10, 0, 0, 1};
    Ipv4Addr upf_ip{10, 0, 0, 2};

    bool operator==(const Settings &) const = default;
};

struct PowerOn {
    std::string ue;
    bool operator==(const PowerOn &) const = default;
};

/// Raw payload sent by a UE on one of its radio bearers.
struct UplinkData {
    std::string ue;
    wire::BearerId bearer_id = 0;
    Bytes payload;
    bool operator==(const UplinkData &) const = default;
};

/// Pseudo-IP packet injected at the UPF for one of a UE's sessions.
struct DownlinkData {
    std::string ue;
    std::uint32_t session_id = 0;
    wire::PseudoIpPacket packet;
    bool operator==(const DownlinkData &) const = default;
};

struct Stimulus {
    std::uint64_t at = 0;
    std::variant<PowerOn, UplinkData, DownlinkData> action;

    bool operator==(const Stimulus &) const = default;
};

using Script = std::vector<Stimulus>;

/// Throws ScriptError when an attachment or stimulus names an unknown entity.
void validate(const Topology &topology, const Script &script);

} // namespace open5g::sim
