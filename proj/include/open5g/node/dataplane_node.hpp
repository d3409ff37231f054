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

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "open5g/bytes.hpp"
#include "open5g/switch/datapath.hpp"
#include "open5g/wire/message.hpp"

namespace open5g::node {

using NodeId = std::uint32_t;

enum class Rat : std::uint8_t { Nr, Lte, Wlan };

std::string_view to_string(Rat rat);
std::optional<Rat> parse_rat(std::string_view text);

/// Whether the RAT's radio stack has the given layer. WLAN terminations only
/// run MAC and PHY.
bool supports_layer(Rat rat, wire::LayerType layer);

struct NodeDescriptor {
    NodeId node_id = 0;
    Rat rat = Rat::Nr;
    Ipv4Addr ngu_ip;
};

/// Open5G bytes sent to the controller. Only ERROR messages are ever sent.
struct ControllerMessage {
    Bytes bytes;
};

/// Signaling-tunnel frame toward the controller.
struct SigUplink {
    wire::TunnelId tunnel_id = 0;
    Bytes frame;
};

/// GTP-U frame toward the core.
struct NguFrame {
    Ipv4Addr remote_ip;
    std::uint16_t udp_port = 0;
    wire::Teid teid = 0;
    Bytes frame;
};

/// Payload delivered on a radio bearer. `ue_tmp_id` is set for the common
/// SRB0 channel, where the C-RNTI does not identify the receiver.
struct RadioDelivery {
    wire::Crnti crnti = 0;
    wire::BearerId bearer_id = 0;
    std::optional<std::uint32_t> ue_tmp_id;
    Bytes payload;
};

using Emission = std::variant<ControllerMessage, SigUplink, NguFrame, RadioDelivery>;

struct NodeCounters {
    std::uint64_t packets_in = 0;
    std::uint64_t packets_out = 0;
    std::uint64_t drops = 0;
    std::uint64_t commands_applied = 0;
    std::uint64_t errors_sent = 0;
};

/// Emulated d-gNB, d-eNB or d-WT. Configuration arrives only as Open5G
/// commands and is never acknowledged; packets move between the radio side,
/// the NG-U side and the controller tunnels strictly through the flow table.
class DataplaneNode {
public:
    explicit DataplaneNode(NodeDescriptor desc) : desc_(desc) {}

    /// Applies every message in `data`. Returns nothing on success and one
    /// ERROR message per failing command.
    std::vector<Emission> handle_open5g(ByteView data);

    std::optional<Emission> ingress_radio(wire::Crnti crnti, wire::BearerId bearer_id, ByteView payload);
    std::optional<Emission> ingress_ngu(ByteView frame);
    std::optional<Emission> ingress_sigtunnel(ByteView frame);

    const NodeDescriptor &descriptor() const { return desc_; }
    const sw::Datapath &datapath() const { return datapath_; }
    const NodeCounters &counters() const { return counters_; }
    std::uint64_t drop_count() const { return counters_.drops; }

private:
    void apply(const wire::Message &msg);
    Emission error_message(Errc code, ByteView offending);
    std::optional<Emission> forward(sw::PacketContext ctx);
    std::nullopt_t drop();

    NodeDescriptor desc_;
    sw::Datapath datapath_;
    NodeCounters counters_;
};

} // namespace open5g::node
