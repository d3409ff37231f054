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
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <variant>
#include <vector>

#include "open5g/bytes.hpp"
#include "open5g/ctrl/controller.hpp"
#include "open5g/node/dataplane_node.hpp"
#include "open5g/sim/entities.hpp"
#include "open5g/sim/topology.hpp"
#include "open5g/sim/trace.hpp"

namespace open5g::sim {

inline constexpr std::string_view kControllerName = "SRC";
inline constexpr std::string_view kAmfName = "AMF";
inline constexpr std::string_view kUpfName = "UPF";

struct UpfRecord {
    std::string node;
    UpfReceipt receipt;
};

struct UeRecord {
    std::string ue;
    wire::BearerId bearer_id = 0;
    Bytes payload;
};

struct SimStats {
    std::uint64_t events = 0;
    std::uint64_t ul_injected = 0;
    std::uint64_t ul_delivered = 0;
    /// Uplink packets dropped by a node's flow table.
    std::uint64_t ul_node_drops = 0;
    std::uint64_t ul_upf_drops = 0;
    std::uint64_t dl_injected = 0;
    std::uint64_t dl_delivered = 0;
    std::uint64_t dl_node_drops = 0;
    /// Downlink packets the UPF could not map to a tunnel.
    std::uint64_t dl_upf_drops = 0;
    /// Downlink deliveries with no matching UE on the node.
    std::uint64_t dl_ue_drops = 0;
    std::uint64_t signaling_drops = 0;
    /// Inputs the controller refused with an error.
    std::uint64_t controller_rejects = 0;
};

/// Discrete-event run of one topology. Every link has a delay of one tick;
/// events at the same tick are handled in the order they were scheduled, and
/// a trace record is written as each message is delivered.
class Simulator {
public:
    /// Throws ScriptError.
    Simulator(Topology topology, Script script, Settings settings = {});
    ~Simulator();
    Simulator(const Simulator &) = delete;
    Simulator &operator=(const Simulator &) = delete;

    /// Runs to quiescence, or until the trace holds `stop_after_step`
    /// records. Throws BudgetExceeded when the event budget runs out.
    void run(std::optional<std::uint64_t> stop_after_step = std::nullopt);
    bool quiescent() const { return queue_.empty(); }

    const EventTrace &trace() const { return trace_; }
    const SimStats &stats() const { return stats_; }
    const std::vector<UpfRecord> &upf_receipts() const { return upf_receipts_; }
    const std::vector<UeRecord> &ue_receipts() const { return ue_receipts_; }

    const Topology &topology() const { return topology_; }
    const node::DataplaneNode &node(std::string_view name) const;
    const node::DataplaneNode &node_at(std::size_t index) const { return nodes_.at(index); }
    const UeAgent &ue(std::string_view name) const;
    const ctrl::Controller &controller() const { return controller_; }
    const CoreNetwork &core() const { return core_; }

private:
    struct ToNodeOpen5g {
        std::size_t node;
        Bytes bytes;
        std::string kind;
    };
    struct ToNodeSig {
        std::size_t node;
        Channel channel;
        Bytes frame;
    };
    struct ToNodeNgu {
        std::size_t node;
        Bytes frame;
    };
    struct ToNodeRadio {
        std::size_t node;
        std::size_t ue;
        RadioTx tx;
        bool data = false;
    };
    struct ToSrcSig {
        std::size_t node;
        Bytes frame;
    };
    struct ToSrcOpen5g {
        std::size_t node;
        Bytes bytes;
    };
    struct ToSrcNgap {
        ctrl::NgapMessage msg;
    };
    struct ToAmf {
        ctrl::NgapMessage msg;
    };
    struct ToUpf {
        std::size_t node;
        Bytes frame;
    };
    struct ToUe {
        std::size_t node;
        node::RadioDelivery delivery;
    };
    struct Stimulate {
        Stimulus stimulus;
    };
    using Payload = std::variant<ToNodeOpen5g, ToNodeSig, ToNodeNgu, ToNodeRadio, ToSrcSig, ToSrcOpen5g, ToSrcNgap,
                                 ToAmf, ToUpf, ToUe, Stimulate>;

    struct Event {
        std::uint64_t time = 0;
        std::uint64_t seq = 0;
        Payload payload;
    };
    struct Later {
        bool operator()(const Event &a, const Event &b) const {
            return a.time != b.time ? a.time > b.time : a.seq > b.seq;
        }
    };

    void schedule(std::uint64_t at, Payload payload);
    void send(Payload payload) { schedule(now_ + 1, std::move(payload)); }
    void record(std::string src, std::string dst, Channel channel, std::string kind, ByteView bytes);
    void dispatch(Payload &payload);

    void handle(ToNodeOpen5g &ev);
    void handle(ToNodeSig &ev);
    void handle(ToNodeNgu &ev);
    void handle(ToNodeRadio &ev);
    void handle(ToSrcSig &ev);
    void handle(ToSrcOpen5g &ev);
    void handle(ToSrcNgap &ev);
    void handle(ToAmf &ev);
    void handle(ToUpf &ev);
    void handle(ToUe &ev);
    void handle(Stimulate &ev);

    void node_output(std::size_t node, std::optional<node::Emission> out);
    void controller_output(std::vector<ctrl::Emission> out);
    Channel sig_channel(wire::TunnelId tunnel_id) const;
    std::string sig_kind(Channel channel, ByteView payload) const;
    std::size_t node_of(ctrl::NodeId id) const { return id - 1; }
    std::optional<std::size_t> node_by_ngu_ip(Ipv4Addr ip) const;
    std::optional<std::size_t> find_ue(std::size_t node, const node::RadioDelivery &delivery) const;

    Topology topology_;
    Settings settings_;
    ctrl::Controller controller_;
    CoreNetwork core_;
    std::vector<node::DataplaneNode> nodes_;
    std::vector<UeAgent> ues_;
    std::vector<std::size_t> ue_node_;

    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t now_ = 0;

    EventTrace trace_;
    SimStats stats_;
    std::vector<UpfRecord> upf_receipts_;
    std::vector<UeRecord> ue_receipts_;
};

/// Builds a simulator, runs it to quiescence and returns the trace.
EventTrace run_scenario(const Topology &topology, const Script &script, const Settings &settings = {});

/// "PORT_MODx2+FLOW_MODx2": message types in order, consecutive repeats
/// collapsed.
std::string batch_kind(ByteView open5g_bytes);

} // namespace open5g::sim
