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

#include "open5g/cli/scenario_file.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "open5g/detail/overloaded.hpp"

namespace open5g::cli {

using detail::overloaded;

namespace {

[[noreturn]] void fail_at(const YAML::Node &node, const std::string &what) {
    auto line = node.Mark().line;
    throw Error(Errc::ParseError,
                "ParseError: line " + (line >= 0 ? std::to_string(line + 1) : std::string("?")) + ": " + what);
}

void expect_map(const YAML::Node &node, std::string_view what, std::initializer_list<std::string_view> allowed) {
    if (!node.IsMap()) {
        fail_at(node, std::string(what) + " must be a mapping");
    }
    for (const auto &kv : node) {
        auto key = kv.first.Scalar();
        bool known = false;
        for (auto a : allowed) {
            known = known || a == key;
        }
        if (!known) {
            fail_at(kv.first, "unknown key '" + key + "' in " + std::string(what));
        }
    }
}

YAML::Node require(const YAML::Node &map, const char *key) {
    auto child = map[key];
    if (!child) {
        fail_at(map, std::string("missing key '") + key + "'");
    }
    return child;
}

std::string scalar(const YAML::Node &node, std::string_view what) {
    if (!node.IsScalar()) {
        fail_at(node, std::string(what) + " must be a scalar");
    }
    return node.Scalar();
}

std::uint64_t unsigned_value(const YAML::Node &node, std::string_view what, std::uint64_t max) {
    auto text = scalar(node, what);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || v > max) {
        fail_at(node, std::string(what) + " must be an integer in [0, " + std::to_string(max) + "], got '" + text +
                          "'");
    }
    return v;
}

Ipv4Addr ip_value(const YAML::Node &node, std::string_view what) {
    auto text = scalar(node, what);
    auto ip = Ipv4Addr::parse(text);
    if (!ip) {
        fail_at(node, std::string(what) + " is not an IPv4 address: '" + text + "'");
    }
    return *ip;
}

std::uint8_t proto_value(const YAML::Node &node) {
    auto text = scalar(node, "proto");
    if (text == "TCP" || text == "tcp") {
        return wire::kIpProtoTcp;
    }
    if (text == "UDP" || text == "udp") {
        return wire::kIpProtoUdp;
    }
    return static_cast<std::uint8_t>(unsigned_value(node, "proto", 255));
}

Bytes hex_value(const YAML::Node &node) {
    auto text = scalar(node, "payload_hex");
    if (text.size() % 2 != 0) {
        fail_at(node, "payload_hex needs an even number of digits");
    }
    Bytes out;
    for (std::size_t i = 0; i < text.size(); i += 2) {
        std::uint8_t b = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + i + 2, b, 16);
        if (ec != std::errc{} || ptr != text.data() + i + 2) {
            fail_at(node, "payload_hex has a non-hex digit");
        }
        out.push_back(b);
    }
    return out;
}

Bytes payload_value(const YAML::Node &map) {
    if (map["payload"] && map["payload_hex"]) {
        fail_at(map, "give either payload or payload_hex, not both");
    }
    if (map["payload_hex"]) {
        return hex_value(map["payload_hex"]);
    }
    if (map["payload"]) {
        return to_bytes(scalar(map["payload"], "payload"));
    }
    return {};
}

template <typename F>
void each(const YAML::Node &seq, std::string_view what, F &&f) {
    if (!seq) {
        return;
    }
    if (!seq.IsSequence()) {
        fail_at(seq, std::string(what) + " must be a list");
    }
    for (const auto &item : seq) {
        f(item);
    }
}

ctrl::QosFlowSpec parse_flow(const YAML::Node &n, std::uint32_t default_id) {
    expect_map(n, "flow", {"id", "ip_dst", "proto", "l4_dst", "drb"});
    ctrl::QosFlowSpec f;
    f.flow_id = n["id"] ? static_cast<std::uint32_t>(unsigned_value(n["id"], "flow id", 0xffffffff)) : default_id;
    f.ip_dst = ip_value(require(n, "ip_dst"), "ip_dst");
    f.ip_proto = proto_value(require(n, "proto"));
    f.l4_dst = static_cast<std::uint16_t>(unsigned_value(require(n, "l4_dst"), "l4_dst", 0xffff));
    f.drb = static_cast<std::uint8_t>(unsigned_value(require(n, "drb"), "drb", 255));
    return f;
}

ctrl::PduSessionSpec parse_session(const YAML::Node &n) {
    expect_map(n, "session", {"id", "drbs", "flows"});
    ctrl::PduSessionSpec s;
    s.session_id = static_cast<std::uint32_t>(unsigned_value(require(n, "id"), "session id", 0xffffffff));
    each(n["drbs"], "drbs", [&](const YAML::Node &d) {
        s.drbs.push_back(static_cast<std::uint8_t>(unsigned_value(d, "drb label", 255)));
    });
    each(n["flows"], "flows", [&](const YAML::Node &f) {
        s.flows.push_back(parse_flow(f, static_cast<std::uint32_t>(s.flows.size() + 1)));
    });
    return s;
}

sim::NodeSpec parse_node(const YAML::Node &n) {
    expect_map(n, "node", {"name", "rat", "ngu_ip"});
    sim::NodeSpec spec;
    spec.name = scalar(require(n, "name"), "name");
    auto rat_node = require(n, "rat");
    auto rat = node::parse_rat(scalar(rat_node, "rat"));
    if (!rat) {
        fail_at(rat_node, "unknown RAT '" + rat_node.Scalar() + "' (expected NR, LTE or WLAN)");
    }
    spec.rat = *rat;
    spec.ngu_ip = ip_value(require(n, "ngu_ip"), "ngu_ip");
    return spec;
}

sim::UeSpec parse_ue(const YAML::Node &n) {
    expect_map(n, "ue", {"name", "attach", "sessions"});
    sim::UeSpec spec;
    spec.name = scalar(require(n, "name"), "name");
    spec.attach = scalar(require(n, "attach"), "attach");
    each(n["sessions"], "sessions", [&](const YAML::Node &s) { spec.sessions.push_back(parse_session(s)); });
    return spec;
}

sim::Stimulus parse_stimulus(const YAML::Node &n) {
    expect_map(n, "stimulus", {"at", "power_on", "uplink", "downlink"});
    sim::Stimulus s;
    s.at = unsigned_value(require(n, "at"), "at", std::numeric_limits<std::uint32_t>::max());
    int actions = 0;
    if (auto p = n["power_on"]) {
        ++actions;
        s.action = sim::PowerOn{scalar(p, "power_on")};
    }
    if (auto u = n["uplink"]) {
        ++actions;
        expect_map(u, "uplink", {"ue", "bearer_id", "payload", "payload_hex"});
        sim::UplinkData d;
        d.ue = scalar(require(u, "ue"), "ue");
        d.bearer_id = static_cast<wire::BearerId>(unsigned_value(require(u, "bearer_id"), "bearer_id", 255));
        d.payload = payload_value(u);
        s.action = std::move(d);
    }
    if (auto dl = n["downlink"]) {
        ++actions;
        expect_map(dl, "downlink", {"ue", "session", "ip_dst", "proto", "l4_dst", "payload", "payload_hex"});
        sim::DownlinkData d;
        d.ue = scalar(require(dl, "ue"), "ue");
        d.session_id = static_cast<std::uint32_t>(unsigned_value(require(dl, "session"), "session", 0xffffffff));
        d.packet.ip_dst = ip_value(require(dl, "ip_dst"), "ip_dst");
        d.packet.ip_proto = proto_value(require(dl, "proto"));
        d.packet.l4_dst = static_cast<std::uint16_t>(unsigned_value(require(dl, "l4_dst"), "l4_dst", 0xffff));
        d.packet.data = payload_value(dl);
        s.action = std::move(d);
    }
    if (actions != 1) {
        fail_at(n, "a stimulus needs exactly one of power_on, uplink, downlink");
    }
    return s;
}

Scenario parse_root(const YAML::Node &root) {
    expect_map(root, "scenario", {"settings", "topology", "script"});
    Scenario sc;
    if (auto st = root["settings"]) {
        expect_map(st, "settings", {"seed", "admission_cap", "max_events", "src_ip", "upf_ip"});
        if (st["seed"]) {
            sc.topology.seed = unsigned_value(st["seed"], "seed", std::numeric_limits<std::uint64_t>::max());
        }
        if (st["admission_cap"]) {
            sc.settings.admission_cap =
                static_cast<std::uint32_t>(unsigned_value(st["admission_cap"], "admission_cap", 0xffffffff));
        }
        if (st["max_events"]) {
            sc.settings.max_events =
                unsigned_value(st["max_events"], "max_events", std::numeric_limits<std::uint64_t>::max());
        }
        if (st["src_ip"]) {
            sc.settings.src_ip = ip_value(st["src_ip"], "src_ip");
        }
        if (st["upf_ip"]) {
            sc.settings.upf_ip = ip_value(st["upf_ip"], "upf_ip");
        }
    }
    auto topo = require(root, "topology");
    expect_map(topo, "topology", {"nodes", "ues"});
    each(topo["nodes"], "nodes", [&](const YAML::Node &n) { sc.topology.nodes.push_back(parse_node(n)); });
    each(topo["ues"], "ues", [&](const YAML::Node &n) { sc.topology.ues.push_back(parse_ue(n)); });
    each(root["script"], "script", [&](const YAML::Node &n) { sc.script.push_back(parse_stimulus(n)); });

    try {
        sim::validate(sc.topology, sc.script);
    } catch (const Error &e) {
        throw Error(Errc::ParseError, std::string("ParseError: ") + e.what());
    }
    return sc;
}

bool printable(ByteView data) {
    for (auto b : data) {
        if (b < 0x20 || b > 0x7e) {
            return false;
        }
    }
    return true;
}

void emit_payload(YAML::Emitter &out, ByteView data) {
    if (data.empty()) {
        return;
    }
    if (printable(data)) {
        out << YAML::Key << "payload" << YAML::Value << YAML::DoubleQuoted << to_text(data);
    } else {
        out << YAML::Key << "payload_hex" << YAML::Value << to_hex(data);
    }
}

} // namespace

Scenario parse_scenario(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception &e) {
        throw Error(Errc::ParseError, "ParseError: line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    try {
        return parse_root(root);
    } catch (const YAML::Exception &e) {
        throw Error(Errc::ParseError, "ParseError: line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
}

Scenario load_scenario(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::ParseError, "ParseError: cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string serialize_scenario(const Scenario &sc) {
    YAML::Emitter out;
    out << YAML::BeginMap;

    out << YAML::Key << "settings" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "seed" << YAML::Value << sc.topology.seed;
    out << YAML::Key << "admission_cap" << YAML::Value << sc.settings.admission_cap;
    out << YAML::Key << "max_events" << YAML::Value << sc.settings.max_events;
    out << YAML::Key << "src_ip" << YAML::Value << sc.settings.src_ip.to_string();
    out << YAML::Key << "upf_ip" << YAML::Value << sc.settings.upf_ip.to_string();
    out << YAML::EndMap;

    out << YAML::Key << "topology" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "nodes" << YAML::Value << YAML::BeginSeq;
    for (const auto &n : sc.topology.nodes) {
        out << YAML::BeginMap;
        out << YAML::Key << "name" << YAML::Value << n.name;
        out << YAML::Key << "rat" << YAML::Value << std::string(node::to_string(n.rat));
        out << YAML::Key << "ngu_ip" << YAML::Value << n.ngu_ip.to_string();
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "ues" << YAML::Value << YAML::BeginSeq;
    for (const auto &u : sc.topology.ues) {
        out << YAML::BeginMap;
        out << YAML::Key << "name" << YAML::Value << u.name;
        out << YAML::Key << "attach" << YAML::Value << u.attach;
        out << YAML::Key << "sessions" << YAML::Value << YAML::BeginSeq;
        for (const auto &s : u.sessions) {
            out << YAML::BeginMap;
            out << YAML::Key << "id" << YAML::Value << s.session_id;
            out << YAML::Key << "drbs" << YAML::Value << YAML::Flow << YAML::BeginSeq;
            for (auto d : s.drbs) {
                out << static_cast<unsigned>(d);
            }
            out << YAML::EndSeq;
            out << YAML::Key << "flows" << YAML::Value << YAML::BeginSeq;
            for (const auto &f : s.flows) {
                out << YAML::Flow << YAML::BeginMap;
                out << YAML::Key << "id" << YAML::Value << f.flow_id;
                out << YAML::Key << "ip_dst" << YAML::Value << f.ip_dst.to_string();
                out << YAML::Key << "proto" << YAML::Value << static_cast<unsigned>(f.ip_proto);
                out << YAML::Key << "l4_dst" << YAML::Value << f.l4_dst;
                out << YAML::Key << "drb" << YAML::Value << static_cast<unsigned>(f.drb);
                out << YAML::EndMap;
            }
            out << YAML::EndSeq;
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::EndMap;

    out << YAML::Key << "script" << YAML::Value << YAML::BeginSeq;
    for (const auto &s : sc.script) {
        out << YAML::BeginMap;
        out << YAML::Key << "at" << YAML::Value << s.at;
        std::visit(overloaded{
                       [&](const sim::PowerOn &p) { out << YAML::Key << "power_on" << YAML::Value << p.ue; },
                       [&](const sim::UplinkData &u) {
                           out << YAML::Key << "uplink" << YAML::Value << YAML::BeginMap;
                           out << YAML::Key << "ue" << YAML::Value << u.ue;
                           out << YAML::Key << "bearer_id" << YAML::Value << static_cast<unsigned>(u.bearer_id);
                           emit_payload(out, u.payload);
                           out << YAML::EndMap;
                       },
                       [&](const sim::DownlinkData &d) {
                           out << YAML::Key << "downlink" << YAML::Value << YAML::BeginMap;
                           out << YAML::Key << "ue" << YAML::Value << d.ue;
                           out << YAML::Key << "session" << YAML::Value << d.session_id;
                           out << YAML::Key << "ip_dst" << YAML::Value << d.packet.ip_dst.to_string();
                           out << YAML::Key << "proto" << YAML::Value << static_cast<unsigned>(d.packet.ip_proto);
                           out << YAML::Key << "l4_dst" << YAML::Value << d.packet.l4_dst;
                           emit_payload(out, d.packet.data);
                           out << YAML::EndMap;
                       },
                   },
                   s.action);
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

} // namespace open5g::cli
