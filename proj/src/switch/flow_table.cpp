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

#include "open5g/switch/flow_table.hpp"

#include <algorithm>

#include "open5g/error.hpp"

namespace open5g::sw {

namespace {

template <class T, class U>
bool field_ok(const std::optional<T> &want, const std::optional<U> &have) {
    return !want || (have && *want == *have);
}

bool before(const FlowEntry &a, std::uint16_t priority, std::uint64_t entry_id) {
    return a.priority > priority || (a.priority == priority && a.entry_id < entry_id);
}

} // namespace

bool matches(const wire::FlowMatch &match, const PacketContext &ctx) {
    if (match.crnti || match.bearer_id) {
        const auto *radio = std::get_if<PacketContext::Radio>(&ctx.ingress);
        if (radio == nullptr) {
            return false;
        }
        if ((match.crnti && *match.crnti != radio->crnti) || (match.bearer_id && *match.bearer_id != radio->bearer_id)) {
            return false;
        }
    }
    return field_ok(match.in_port, ctx.in_port) && field_ok(match.ip_dst, ctx.ip_dst) &&
           field_ok(match.ip_proto, ctx.ip_proto) && field_ok(match.l4_dst, ctx.l4_dst);
}

bool references(const wire::FlowMatch &match, const wire::FlowAction &action, const LogicalPort &port) {
    if (action.out_port == port.port_id || match.in_port == port.port_id) {
        return true;
    }
    if (const auto *radio = std::get_if<wire::RadioBearer>(&port.spec)) {
        return match.crnti == radio->crnti && match.bearer_id == radio->bearer_id;
    }
    return false;
}

std::string describe(const wire::FlowMatch &match) {
    std::string out;
    auto add = [&out](const char *name, const std::string &value) {
        if (!out.empty()) {
            out += ',';
        }
        out += name;
        out += '=';
        out += value;
    };
    if (match.in_port) {
        add("in_port", "port-" + std::to_string(*match.in_port));
    }
    if (match.crnti) {
        add("crnti", std::to_string(*match.crnti));
    }
    if (match.bearer_id) {
        add("bearer_id", std::to_string(*match.bearer_id));
    }
    if (match.ip_dst) {
        add("ip_dst", match.ip_dst->to_string());
    }
    if (match.ip_proto) {
        add("ip_proto", std::to_string(*match.ip_proto));
    }
    if (match.l4_dst) {
        add("l4_dst", std::to_string(*match.l4_dst));
    }
    return out;
}

const FlowEntry &FlowTable::add(std::uint16_t priority, const wire::FlowMatch &match, const wire::FlowAction &action) {
    auto dup = std::find_if(entries_.begin(), entries_.end(),
                            [&](const FlowEntry &e) { return e.priority == priority && e.match == match; });
    if (dup != entries_.end()) {
        throw Error(Errc::DuplicateEntry, "DuplicateEntry: " + describe(match));
    }
    FlowEntry entry{next_entry_id_++, priority, match, action};
    auto pos = std::find_if(entries_.begin(), entries_.end(),
                            [&](const FlowEntry &e) { return !before(e, entry.priority, entry.entry_id); });
    return *entries_.insert(pos, std::move(entry));
}

std::size_t FlowTable::remove_matching(const wire::FlowMatch &match) {
    return std::erase_if(entries_, [&](const FlowEntry &e) { return e.match == match; });
}

std::size_t FlowTable::remove_referencing(const LogicalPort &port) {
    return std::erase_if(entries_, [&](const FlowEntry &e) { return references(e.match, e.action, port); });
}

std::optional<wire::FlowAction> FlowTable::lookup(const PacketContext &ctx) const {
    for (const auto &entry : entries_) {
        if (matches(entry.match, ctx)) {
            return entry.action;
        }
    }
    return std::nullopt;
}

} // namespace open5g::sw
