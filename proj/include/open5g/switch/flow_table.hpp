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
#include "open5g/switch/port_registry.hpp"
#include "open5g/wire/message.hpp"

namespace open5g::sw {

struct RadioIngress {
    Crnti crnti = 0;
    BearerId bearer_id = 0;
};
struct NguIngress {
    std::uint16_t udp_port = 0;
    Teid teid = 0;
};
struct SigIngress {
    TunnelId tunnel_id = 0;
};

/// Where a packet entered the node, plus the header fields the table may
/// match on.
struct PacketContext {
    using Radio = RadioIngress;
    using Ngu = NguIngress;
    using Sig = SigIngress;

    std::variant<Radio, Ngu, Sig> ingress;
    /// Logical port the ingress identity resolved to, if any.
    std::optional<PortId> in_port;
    std::optional<Ipv4Addr> ip_dst;
    std::optional<std::uint8_t> ip_proto;
    std::optional<std::uint16_t> l4_dst;
    Bytes payload;
};

/// True if every populated field of `match` equals the context's value.
bool matches(const wire::FlowMatch &match, const PacketContext &ctx);

/// Whether `match` or `action` names `port`, directly or through the
/// (C-RNTI, bearer id) key of a radio port.
bool references(const wire::FlowMatch &match, const wire::FlowAction &action, const LogicalPort &port);

struct FlowEntry {
    std::uint64_t entry_id = 0;
    std::uint16_t priority = 0;
    wire::FlowMatch match;
    wire::FlowAction action;

    bool operator==(const FlowEntry &) const = default;
};

/// "crnti=61,bearer_id=1"
std::string describe(const wire::FlowMatch &match);

/// Single flow table. Entries are kept in lookup order: priority descending,
/// then entry id ascending, so the first hit is the winner.
class FlowTable {
public:
    /// Throws DuplicateEntry if an entry with the same (priority, match) exists.
    const FlowEntry &add(std::uint16_t priority, const wire::FlowMatch &match, const wire::FlowAction &action);

    /// Strict delete: removes every entry whose match equals `match`.
    std::size_t remove_matching(const wire::FlowMatch &match);

    /// Removes every entry that references `port`.
    std::size_t remove_referencing(const LogicalPort &port);

    std::optional<wire::FlowAction> lookup(const PacketContext &ctx) const;

    const std::vector<FlowEntry> &entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    bool operator==(const FlowTable &) const = default;

private:
    std::vector<FlowEntry> entries_;
    std::uint64_t next_entry_id_ = 1;
};

} // namespace open5g::sw
