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
#include <functional>
#include <map>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "open5g/bytes.hpp"
#include "open5g/ctrl/messages.hpp"
#include "open5g/node/dataplane_node.hpp"
#include "open5g/wire/message.hpp"

namespace open5g::ctrl {

using node::NodeId;
using node::Rat;
using wire::BearerId;
using wire::Crnti;
using wire::PortId;
using wire::Teid;
using wire::TunnelId;

inline constexpr Crnti kFirstCrnti = 0x003d;

// Flow-table priorities. Entries of the different classes never overlap; the
// levels only fix the dump order: data paths, dedicated SRBs, common SRB0.
inline constexpr std::uint16_t kCommonSignalingPriority = 100;
inline constexpr std::uint16_t kDedicatedSignalingPriority = 200;
inline constexpr std::uint16_t kDataPriority = 300;

enum class RrcState { Idle, SetupRequested, Connected, Secured, Configured };
std::string_view to_string(RrcState state);

enum class Srb { Srb0, Srb1, Srb2 };

struct NodeProfile {
    NodeId node_id = 0;
    Rat rat = Rat::Nr;
    Ipv4Addr ngu_ip;
};

struct SrbCtx {
    BearerId bearer_id = 0;
    PortId radio_port = 0;
    PortId sig_port = 0;
    TunnelId tunnel_id = 0;
};

struct DrbCtx {
    std::uint8_t label = 0;
    BearerId bearer_id = 0;
    PortId radio_port_id = 0;
};

struct QosFlowCtx {
    std::uint32_t flow_id = 0;
    Ipv4Addr ip_dst;
    std::uint8_t ip_proto = 0;
    std::uint16_t l4_dst = 0;
    /// Label of the DRB (within the same session) serving this flow.
    std::uint8_t mapped_drb = 0;
};

struct NguTunnelCtx {
    Teid teid = 0;
    std::uint16_t udp_port = wire::kGtpuUdpPort;
    PortId port_id = 0;
};

struct PduSessionCtx {
    std::uint32_t session_id = 0;
    std::vector<QosFlowCtx> qos_flows;
    std::vector<DrbCtx> drbs;
    NguTunnelCtx ngu_tunnel;
};

struct UeContext {
    std::uint32_t ran_ue_id = 0;
    std::uint32_t ue_tmp_id = 0;
    Crnti crnti = 0;
    NodeId serving_node_id = 0;
    RrcState rrc_state = RrcState::Idle;
    bool security_mode_sent = false;
    /// Set when a node rejected one of this UE's commands; the procedure is
    /// abandoned.
    bool failed = false;
    std::map<Srb, SrbCtx> srbs;
    std::vector<PduSessionCtx> pdu_sessions;
    Bytes security_info;
};

// --- emissions ---------------------------------------------------------------

/// Open5G commands sent to one node in a single controller-link transmission.
struct ConfigBatch {
    NodeId node_id = 0;
    std::vector<wire::Message> messages;

    /// Concatenated wire encodings.
    Bytes encode() const;
};

/// RRC message tunneled to a node; `frame` is the signaling-tunnel frame.
struct RrcDownlink {
    NodeId node_id = 0;
    TunnelId tunnel_id = 0;
    Srb srb = Srb::Srb0;
    RrcMessage message;
    Bytes frame;
};

/// NG-AP message toward the AMF.
struct NgapOut {
    NgapMessage message;
};

using Emission = std::variant<ConfigBatch, RrcDownlink, NgapOut>;

// --- session configuration ----------------------------------------------------

struct SessionConfig {
    std::vector<wire::PortMod> ports;
    std::vector<wire::FlowMod> flows;
};

/// Radio-layer configuration blobs for a bearer on the given RAT.
std::vector<wire::ConfigTlv> layer_config(Rat rat, wire::BearerKind kind);

/// Port and flow commands for one PDU session: a radio port per DRB, one GTP
/// port for the session tunnel, an uplink entry per DRB and a downlink entry
/// per QoS flow. Throws InvalidSession if a flow names a DRB the session
/// does not have.
SessionConfig build_session_config(const UeContext &ue, const PduSessionCtx &session, const NodeProfile &node,
                                   Ipv4Addr upf_ip);

// --- admission ----------------------------------------------------------------

struct AdmissionRequest {
    NodeId node_id = 0;
    std::uint32_t ue_tmp_id = 0;
    /// UEs currently admitted on the node.
    std::size_t ues_on_node = 0;
    std::uint32_t cap = 0;
};

using AdmissionPolicy = std::function<bool(const AdmissionRequest &)>;

/// Admits while the node serves fewer UEs than the cap.
bool admit_below_cap(const AdmissionRequest &req);

struct ControllerConfig {
    Ipv4Addr src_ip{10, 0, 0, 1};
    Ipv4Addr upf_ip{10, 0, 0, 2};
    std::uint32_t admission_cap = 8;
};

/// The SDN RAN controller: Open5G configuration point, per-UE RRC handling
/// and the NG-AP endpoint toward the AMF. Inputs are processed one at a time;
/// every identifier it hands out comes from a deterministic counter.
class Controller {
public:
    explicit Controller(ControllerConfig config, AdmissionPolicy policy = admit_below_cap);

    void add_node(const NodeProfile &profile);

    /// SRB0 common port, its controller tunnel port and the two entries that
    /// pair them. Throws AlreadyBootstrapped on a second call for a node.
    ConfigBatch bootstrap_node(NodeId node_id);

    /// Raw signaling-tunnel frame from a node.
    std::vector<Emission> on_sig_uplink(NodeId node_id, ByteView frame);

    /// `ue_tmp_id` comes from the SRB0 envelope and is required on SRB0.
    /// Throws UnknownTunnel or ProtocolViolation.
    std::vector<Emission> on_rrc_uplink(NodeId node_id, TunnelId tunnel_id, std::optional<std::uint32_t> ue_tmp_id,
                                        const RrcMessage &rrc);

    /// Throws UnknownUe, ProtocolViolation or InvalidSession.
    std::vector<Emission> on_ngap(const NgapMessage &msg);

    /// Marks the UE that owns the failed command as failed.
    void on_node_error(NodeId node_id, ByteView open5g_bytes);

    bool admit_ue(NodeId node_id, std::uint32_t ue_tmp_id) const;

    const UeContext *find_ue(std::uint32_t ran_ue_id) const;
    const UeContext *find_ue_by_tmp_id(NodeId node_id, std::uint32_t ue_tmp_id) const;
    const std::map<std::uint32_t, UeContext> &ues() const { return ues_; }
    std::size_t ue_count(NodeId node_id) const;

    /// Which SRB a controller tunnel carries.
    std::optional<Srb> channel_of_tunnel(TunnelId tunnel_id) const;

    const ControllerConfig &config() const { return config_; }

private:
    struct NodeState {
        NodeProfile profile;
        bool bootstrapped = false;
        std::uint32_t next_xid = 1;
        PortId next_port_id = 1;
        Crnti next_crnti = kFirstCrnti;
        SrbCtx srb0;
        /// xid -> ran_ue_id for commands issued on behalf of a UE.
        std::map<std::uint32_t, std::uint32_t> xid_owner;
    };

    struct TunnelBinding {
        NodeId node_id = 0;
        Srb srb = Srb::Srb0;
        std::optional<std::uint32_t> ran_ue_id;
    };

    NodeState &node_state(NodeId node_id);
    UeContext &ue_for(std::uint32_t ran_ue_id);
    ConfigBatch make_batch(NodeState &node, std::optional<std::uint32_t> owner, const std::vector<wire::PortMod> &ports,
                           const std::vector<wire::FlowMod> &flows);
    SrbCtx allocate_srb(NodeState &node, Srb srb, BearerId bearer_id, std::optional<std::uint32_t> ran_ue_id);
    std::pair<std::vector<wire::PortMod>, std::vector<wire::FlowMod>>
    srb_config(const NodeState &node, Crnti crnti, const SrbCtx &srb, std::uint16_t priority) const;
    RrcDownlink rrc_downlink(const UeContext &ue, Srb srb, RrcMessage msg) const;

    std::vector<Emission> on_setup_request(NodeState &node, std::uint32_t ue_tmp_id);
    std::vector<Emission> on_context_setup(const InitialContextSetupRequest &req);

    ControllerConfig config_;
    AdmissionPolicy policy_;
    std::map<NodeId, NodeState> nodes_;
    std::map<std::uint32_t, UeContext> ues_;
    std::map<TunnelId, TunnelBinding> tunnels_;
    std::uint32_t next_ran_ue_id_ = 1;
    Teid next_teid_ = 1;
    TunnelId next_tunnel_id_ = 1;
};

} // namespace open5g::ctrl
