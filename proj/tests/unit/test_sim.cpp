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

#include <gtest/gtest.h>

#include <chrono>
#include <tuple>

#include "generators.hpp"
#include "open5g/sim/simulator.hpp"
#include "open5g/wire/codec.hpp"
#include "open5g/wire/tunnel.hpp"

using namespace open5g;
using namespace open5g::sim;

namespace {

const Ipv4Addr kIp1(10, 45, 0, 1);
const Ipv4Addr kIp2(10, 45, 0, 2);

std::optional<Errc> code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    return std::nullopt;
}

ctrl::PduSessionSpec two_drb_session() {
    return {1, {1, 2}, {{1, kIp1, 6, 43, 1}, {2, kIp1, 6, 23, 1}, {3, kIp2, 6, 34, 2}}};
}

Topology single_gnb(std::uint64_t seed = 1) {
    Topology t;
    t.seed = seed;
    t.nodes = {{"gnb1", node::Rat::Nr, Ipv4Addr(10, 0, 1, 1)}};
    t.ues = {{"ue1", "gnb1", {two_drb_session()}}};
    return t;
}

Stimulus power_on(std::string ue, std::uint64_t at = 0) {
    return {at, PowerOn{std::move(ue)}};
}

Stimulus uplink(std::uint64_t at, wire::BearerId bearer, std::string payload, std::string ue = "ue1") {
    return {at, UplinkData{std::move(ue), bearer, to_bytes(payload)}};
}

Stimulus downlink(std::uint64_t at, Ipv4Addr ip, std::uint8_t proto, std::uint16_t l4, std::string payload,
                  std::string ue = "ue1", std::uint32_t session = 1) {
    return {at, DownlinkData{std::move(ue), session, {ip, proto, l4, to_bytes(payload)}}};
}

using Row = std::tuple<std::string, std::string, Channel, std::string>;

std::vector<Row> rows(const EventTrace &t) {
    std::vector<Row> out;
    for (const auto &r : t.records) {
        out.emplace_back(r.src, r.dst, r.channel, r.kind);
    }
    return out;
}

// Initial access call flow between gnb1, ue1, the controller and the AMF.
const std::vector<Row> kInitialAccess = {
    {"SRC", "gnb1", Channel::Open5g, "PORT_MODx2+FLOW_MODx2"},
    {"ue1", "gnb1", Channel::Srb0, "RRCSetupRequest"},
    {"gnb1", "SRC", Channel::Srb0, "RRCSetupRequest"},
    {"SRC", "gnb1", Channel::Open5g, "PORT_MODx2+FLOW_MODx2"},
    {"SRC", "gnb1", Channel::Srb0, "RRCSetup"},
    {"gnb1", "ue1", Channel::Srb0, "RRCSetup"},
    {"ue1", "gnb1", Channel::Srb1, "RRCSetupComplete"},
    {"gnb1", "SRC", Channel::Srb1, "RRCSetupComplete"},
    {"SRC", "AMF", Channel::Ngap, "InitialUEMessage"},
    {"AMF", "SRC", Channel::Ngap, "InitialContextSetupRequest"},
    {"SRC", "gnb1", Channel::Open5g, "PORT_MODx5+FLOW_MODx7"},
    {"SRC", "gnb1", Channel::Srb1, "SecurityModeCommand"},
    {"gnb1", "ue1", Channel::Srb1, "SecurityModeCommand"},
    {"ue1", "gnb1", Channel::Srb1, "SecurityModeComplete"},
    {"gnb1", "SRC", Channel::Srb1, "SecurityModeComplete"},
    {"SRC", "gnb1", Channel::Srb1, "RRCReconfiguration"},
    {"gnb1", "ue1", Channel::Srb1, "RRCReconfiguration"},
    {"ue1", "gnb1", Channel::Srb1, "RRCReconfigurationComplete"},
    {"gnb1", "SRC", Channel::Srb1, "RRCReconfigurationComplete"},
    {"SRC", "AMF", Channel::Ngap, "InitialContextSetupResponse"},
};

} // namespace

TEST(InitialAccess, TwentyStepCallFlow) {
    Simulator sim(single_gnb(), {power_on("ue1")});
    sim.run();
    const auto &t = sim.trace();
    EXPECT_EQ(rows(t), kInitialAccess);
    for (std::size_t i = 0; i < t.records.size(); ++i) {
        EXPECT_EQ(t.records[i].step_no, i + 1);
        if (i > 0) {
            EXPECT_GE(t.records[i].time, t.records[i - 1].time);
        }
    }
    EXPECT_EQ(sim.ue("ue1").state(), UeAgent::State::Configured);
    EXPECT_EQ(sim.ue("ue1").crnti(), ctrl::kFirstCrnti);
    EXPECT_EQ(sim.ue("ue1").drb_bearer_ids(), (std::vector<wire::BearerId>{1, 2}));
    EXPECT_EQ(sim.controller().ues().begin()->second.rrc_state, ctrl::RrcState::Configured);
    auto tunnel = sim.core().tunnel("ue1", 1);
    ASSERT_TRUE(tunnel);
    EXPECT_EQ(tunnel->teid, 1u);
    EXPECT_EQ(tunnel->gnb_ip, Ipv4Addr(10, 0, 1, 1));
    EXPECT_EQ(sim.node("gnb1").counters().errors_sent, 0u);
    EXPECT_TRUE(sim.quiescent());
}

TEST(InitialAccess, NodesNeverSpeakOpen5g) {
    Simulator sim(single_gnb(), {power_on("ue1")});
    sim.run();
    for (const auto &r : sim.trace().records) {
        if (r.channel == Channel::Open5g) {
            EXPECT_EQ(r.src, "SRC");
        }
    }
}

TEST(InitialAccess, StopAfterStep) {
    Simulator sim(single_gnb(), {power_on("ue1")});
    sim.run(11);
    EXPECT_EQ(sim.trace().records.size(), 11u);
    EXPECT_EQ(sim.node("gnb1").datapath().table().size(), 11u);
    EXPECT_FALSE(sim.quiescent());
    sim.run();
    EXPECT_EQ(sim.trace().records.size(), 20u);
}

TEST(InitialAccess, EmptyScriptOnlyBootstraps) {
    auto t = single_gnb();
    t.nodes.push_back({"enb1", node::Rat::Lte, Ipv4Addr(10, 0, 1, 2)});
    auto trace = run_scenario(t, {});
    ASSERT_EQ(trace.records.size(), 2u);
    for (const auto &r : trace.records) {
        EXPECT_EQ(r.channel, Channel::Open5g);
        EXPECT_EQ(r.kind, "PORT_MODx2+FLOW_MODx2");
    }
    EXPECT_EQ(trace.records[0].dst, "gnb1");
    EXPECT_EQ(trace.records[1].dst, "enb1");
}

TEST(InitialAccess, FinishesWellUnderASecond) {
    auto start = std::chrono::steady_clock::now();
    run_scenario(single_gnb(), {power_on("ue1")});
    EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(1));
}

TEST(Determinism, SameSeedSameTrace) {
    Script s{power_on("ue1"), uplink(40, 1, "x"), downlink(41, kIp2, 6, 34, "y")};
    auto a = run_scenario(single_gnb(5), s);
    auto b = run_scenario(single_gnb(5), s);
    EXPECT_EQ(a, b);
    EXPECT_EQ(trace_digest(a), trace_digest(b));
    auto c = run_scenario(single_gnb(6), s);
    EXPECT_EQ(rows(a), rows(c));
    EXPECT_NE(trace_digest(a), trace_digest(c));
}

TEST(Determinism, RandomScenariosRepeat) {
    gen::Rng rng(12);
    for (int round = 0; round < 20; ++round) {
        auto t = single_gnb(gen::uniform(rng, 1, 1000));
        Script s{power_on("ue1")};
        for (int i = 0; i < 10; ++i) {
            s.push_back(uplink(gen::uniform(rng, 0, 60), static_cast<wire::BearerId>(gen::uniform(rng, 1, 2)), "u"));
        }
        EXPECT_EQ(run_scenario(t, s), run_scenario(t, s));
    }
}

TEST(DataPaths, UplinkReachesUpfOnSessionTunnel) {
    Simulator sim(single_gnb(), {power_on("ue1"), uplink(30, 1, "one"), uplink(31, 2, "two")});
    sim.run();
    ASSERT_EQ(sim.upf_receipts().size(), 2u);
    EXPECT_EQ(sim.upf_receipts()[0].node, "gnb1");
    EXPECT_EQ(sim.upf_receipts()[0].receipt, (UpfReceipt{1, to_bytes("one")}));
    EXPECT_EQ(sim.upf_receipts()[1].receipt, (UpfReceipt{1, to_bytes("two")}));
    const auto &last = sim.trace().records.back();
    EXPECT_EQ(std::make_tuple(last.src, last.dst, last.channel, last.kind),
              std::make_tuple(std::string("gnb1"), std::string("UPF"), Channel::Ngu, std::string("GTP-U")));
}

TEST(DataPaths, DownlinkFollowsQosFlowMapping) {
    Simulator sim(single_gnb(), {power_on("ue1"), downlink(30, kIp1, 6, 43, "a"), downlink(31, kIp1, 6, 23, "b"),
                                 downlink(32, kIp2, 6, 34, "c"), downlink(33, Ipv4Addr(10, 45, 0, 9), 17, 53, "d")});
    sim.run();
    const auto &got = sim.ue_receipts();
    ASSERT_EQ(got.size(), 3u);
    EXPECT_EQ(got[0].bearer_id, 1);
    EXPECT_EQ(got[1].bearer_id, 1);
    EXPECT_EQ(got[2].bearer_id, 2);
    EXPECT_EQ(got[2].payload, wire::make_pseudo_ip({kIp2, 6, 34, to_bytes("c")}));
    EXPECT_EQ(sim.stats().dl_node_drops, 1u);
    EXPECT_EQ(sim.node("gnb1").drop_count(), 1u);
}

TEST(DataPaths, TrafficBeforeSetupIsDropped) {
    Simulator sim(single_gnb(), {uplink(5, 1, "early"), downlink(5, kIp1, 6, 43, "early"), power_on("ue1", 6)});
    sim.run();
    EXPECT_EQ(sim.stats().ul_node_drops, 1u);
    EXPECT_EQ(sim.stats().dl_upf_drops, 1u);
    EXPECT_TRUE(sim.upf_receipts().empty());
    EXPECT_EQ(sim.ue("ue1").state(), UeAgent::State::Configured);
}

TEST(DataPaths, RandomTrafficIsConserved) {
    gen::Rng rng(100);
    Script s{power_on("ue1")};
    for (int i = 0; i < 100; ++i) {
        auto at = gen::uniform(rng, 0, 80);
        if (gen::coin(rng)) {
            // 5 and 6 are valid DRB ids the session never configured
            static constexpr wire::BearerId drbs[] = {1, 2, 5, 6};
            s.push_back(uplink(at, drbs[gen::uniform(rng, 0, 3)], "u"));
        } else {
            Ipv4Addr ip = gen::coin(rng) ? kIp1 : kIp2;
            s.push_back(downlink(at, ip, 6, static_cast<std::uint16_t>(gen::uniform(rng, 20, 45)), "d"));
        }
    }
    Simulator sim(single_gnb(), s);
    sim.run();
    const auto &st = sim.stats();
    EXPECT_EQ(st.ul_injected + st.dl_injected, 100u);
    EXPECT_EQ(st.ul_injected, st.ul_delivered + st.ul_node_drops + st.ul_upf_drops);
    EXPECT_EQ(st.dl_injected, st.dl_delivered + st.dl_node_drops + st.dl_upf_drops + st.dl_ue_drops);
    EXPECT_GT(st.ul_delivered, 0u);
    EXPECT_GT(st.dl_delivered, 0u);
    EXPECT_EQ(st.ul_delivered, sim.upf_receipts().size());
    EXPECT_EQ(st.dl_delivered, sim.ue_receipts().size());
    const auto &c = sim.node("gnb1").counters();
    EXPECT_EQ(c.packets_in, c.packets_out + c.drops);
}

TEST(MultiRat, EveryNodeFollowsTheSameGrammar) {
    Topology t;
    t.seed = 3;
    t.nodes = {{"gnb1", node::Rat::Nr, Ipv4Addr(10, 0, 1, 1)},
               {"enb1", node::Rat::Lte, Ipv4Addr(10, 0, 1, 2)},
               {"wt1", node::Rat::Wlan, Ipv4Addr(10, 0, 1, 3)}};
    ctrl::PduSessionSpec one{1, {1}, {{1, kIp1, 6, 80, 1}}};
    t.ues = {{"ue1", "gnb1", {one}}, {"ue2", "enb1", {one}}, {"ue3", "wt1", {one}}};
    Simulator sim(t, {power_on("ue1"), power_on("ue2"), power_on("ue3"), uplink(30, 1, "a", "ue1"),
                      uplink(30, 1, "b", "ue2"), uplink(30, 1, "c", "ue3")});
    sim.run();
    std::map<std::string, std::vector<std::tuple<Channel, std::string>>> per_node;
    for (const auto &r : sim.trace().records) {
        for (const auto *name : {"gnb1", "enb1", "wt1"}) {
            if (r.src == name || r.dst == name) {
                per_node[name].emplace_back(r.channel, r.kind);
            }
        }
    }
    EXPECT_EQ(per_node["gnb1"], per_node["enb1"]);
    EXPECT_EQ(per_node["gnb1"], per_node["wt1"]);
    EXPECT_EQ(sim.upf_receipts().size(), 3u);
    std::set<wire::Teid> teids;
    for (const auto &r : sim.upf_receipts()) {
        teids.insert(r.receipt.teid);
    }
    EXPECT_EQ(teids.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(sim.node_at(i).counters().errors_sent, 0u);
        EXPECT_EQ(sim.node_at(i).datapath().table().size(), 2u + 2u + 2u + 2u);
    }
}

TEST(Admission, CapHoldsBackLaterUes) {
    auto t = single_gnb();
    t.ues.push_back({"ue2", "gnb1", {two_drb_session()}});
    Settings st;
    st.admission_cap = 1;
    Simulator sim(t, {power_on("ue1"), power_on("ue2")}, st);
    sim.run();
    EXPECT_EQ(sim.ue("ue1").state(), UeAgent::State::Configured);
    EXPECT_EQ(sim.ue("ue2").state(), UeAgent::State::AwaitSetup);
    EXPECT_EQ(sim.controller().ues().size(), 1u);
}

TEST(Errors, BudgetExceeded) {
    Settings st;
    st.max_events = 5;
    Simulator sim(single_gnb(), {power_on("ue1")}, st);
    EXPECT_EQ(code_of([&] { sim.run(); }), Errc::BudgetExceeded);
}

TEST(Errors, ScriptErrors) {
    auto bad = [](Topology t, Script s) { return code_of([&] { Simulator sim(t, s); }); };
    EXPECT_EQ(bad(single_gnb(), {power_on("ue9")}), Errc::ScriptError);
    EXPECT_EQ(bad(single_gnb(), {uplink(1, 1, "x", "nobody")}), Errc::ScriptError);
    for (wire::BearerId id : {0, 3, 4, 32}) {
        EXPECT_EQ(bad(single_gnb(), {uplink(1, id, "x")}), Errc::ScriptError);
    }
    auto t = single_gnb();
    t.ues[0].attach = "gnb9";
    EXPECT_EQ(bad(t, {}), Errc::ScriptError);
    t = single_gnb();
    t.nodes.push_back(t.nodes[0]);
    EXPECT_EQ(bad(t, {}), Errc::ScriptError);
    t = single_gnb();
    t.ues.push_back({"gnb1", "gnb1", {}});
    EXPECT_EQ(bad(t, {}), Errc::ScriptError);
    t = single_gnb();
    t.nodes.push_back({"enb1", node::Rat::Lte, t.nodes[0].ngu_ip});
    EXPECT_EQ(bad(t, {}), Errc::ScriptError);
    EXPECT_FALSE(bad(single_gnb(), {power_on("ue1")}));
}

TEST(Errors, SecondPowerOnIsNotIdle) {
    Simulator sim(single_gnb(), {power_on("ue1"), power_on("ue1", 1)});
    EXPECT_EQ(code_of([&] { sim.run(); }), Errc::NotIdle);
}

TEST(Errors, UnknownNames) {
    Simulator sim(single_gnb(), {});
    EXPECT_EQ(code_of([&] { sim.node("x"); }), Errc::UnknownNode);
    EXPECT_TRUE(code_of([&] { sim.ue("x"); }).has_value());
}

TEST(UeAgent, ProcedureStates) {
    UeAgent ue("ue1", 0x77);
    EXPECT_EQ(ue.state(), UeAgent::State::Idle);
    auto req = ue.power_on();
    EXPECT_EQ(req.crnti, wire::kCommonCrnti);
    EXPECT_EQ(req.bearer_id, wire::kSrb0BearerId);
    auto env = wire::unwrap_srb0(req.payload);
    EXPECT_EQ(env.ue_tmp_id, 0x77u);
    EXPECT_EQ(ctrl::decode_rrc(env.message), ctrl::RrcMessage(ctrl::RrcSetupRequest{0x77}));
    EXPECT_EQ(code_of([&] { ue.power_on(); }), Errc::NotIdle);

    auto setup = wire::wrap_srb0(0x77, ctrl::encode_rrc(ctrl::RrcSetup{61, 3}));
    auto complete = ue.on_signaling(wire::kSrb0BearerId, setup);
    ASSERT_TRUE(complete);
    EXPECT_EQ(complete->crnti, 61);
    EXPECT_EQ(complete->bearer_id, 3);
    EXPECT_EQ(ctrl::decode_rrc(complete->payload),
              ctrl::RrcMessage(ctrl::RrcSetupComplete{registration_nas("ue1")}));

    auto smc = ue.on_signaling(3, ctrl::encode_rrc(ctrl::SecurityModeCommand{to_bytes("k")}));
    ASSERT_TRUE(smc);
    EXPECT_EQ(ctrl::decode_rrc(smc->payload), ctrl::RrcMessage(ctrl::SecurityModeComplete{}));
    auto rc = ue.on_signaling(3, ctrl::encode_rrc(ctrl::RrcReconfiguration{4, {1, 2}}));
    ASSERT_TRUE(rc);
    EXPECT_EQ(ue.state(), UeAgent::State::Configured);
    EXPECT_EQ(ue.drb_bearer_ids(), (std::vector<wire::BearerId>{1, 2}));
}

TEST(UeAgent, IgnoresSetupForSomeoneElse) {
    UeAgent ue("ue1", 0x77);
    ue.power_on();
    EXPECT_FALSE(ue.on_signaling(wire::kSrb0BearerId, wire::wrap_srb0(0x78, ctrl::encode_rrc(ctrl::RrcSetup{61, 3}))));
    EXPECT_EQ(ue.state(), UeAgent::State::AwaitSetup);
}

TEST(Core, RegistrationNasRoundTrip) {
    EXPECT_EQ(registration_nas("ue1"), to_bytes("REGISTER ue1"));
    EXPECT_EQ(parse_registration_nas(to_bytes("REGISTER ue7")), "ue7");
    EXPECT_FALSE(parse_registration_nas(to_bytes("HELLO")));
}

TEST(Core, AmfStub) {
    std::map<std::string, std::vector<ctrl::PduSessionSpec>> specs{{"ue1", {two_drb_session()}}};
    auto reply = amf_stub(ctrl::InitialUeMessage{4, registration_nas("ue1")}, specs, 1);
    const auto &req = std::get<ctrl::InitialContextSetupRequest>(reply);
    EXPECT_EQ(req.ran_ue_id, 4u);
    EXPECT_EQ(req.sessions, specs["ue1"]);
    EXPECT_EQ(req.security_info.size(), 16u);
    EXPECT_EQ(std::get<ctrl::InitialContextSetupRequest>(
                  amf_stub(ctrl::InitialUeMessage{4, registration_nas("ue1")}, specs, 1))
                  .security_info,
              req.security_info);
    EXPECT_EQ(code_of([&] { amf_stub(ctrl::InitialUeMessage{4, registration_nas("ue2")}, specs, 1); }),
              Errc::UnknownUe);
    EXPECT_EQ(code_of([&] { amf_stub(ctrl::InitialContextSetupResponse{4, {}}, specs, 1); }),
              Errc::ProtocolViolation);
}

TEST(Core, UpfFraming) {
    auto frame = wire::encap_gtpu(to_bytes("pkt"), 9);
    EXPECT_EQ(std::get<UpfReceipt>(upf_uplink(frame)), (UpfReceipt{9, to_bytes("pkt")}));
    frame[0] = 0x20;
    EXPECT_TRUE(std::holds_alternative<BadFrame>(upf_uplink(frame)));
    EXPECT_TRUE(std::holds_alternative<BadFrame>(upf_uplink(Bytes{1})));
    auto dl = upf_downlink({kIp1, 6, 43, to_bytes("x")}, 3);
    EXPECT_EQ(wire::decap_gtpu(dl), (wire::GtpuFrame{3, wire::make_pseudo_ip({kIp1, 6, 43, to_bytes("x")})}));
}

TEST(Trace, BatchKindCollapsesRuns) {
    wire::Message pm{1, wire::PortMod{wire::PortCommand::Create, 1, wire::SigTunnel{{}, 1}}};
    wire::Message hello{2, wire::Hello{}};
    Bytes b;
    for (const auto &m : {pm, pm, hello, pm}) {
        auto e = wire::encode(m);
        b.insert(b.end(), e.begin(), e.end());
    }
    EXPECT_EQ(batch_kind(b), "PORT_MODx2+HELLOx1+PORT_MODx1");
}

TEST(Trace, ChannelNames) {
    for (auto c : {Channel::Open5g, Channel::Srb0, Channel::Srb1, Channel::Srb2, Channel::Ngap, Channel::Ngu,
                   Channel::RadioData}) {
        EXPECT_EQ(parse_channel(to_string(c)), c);
    }
    EXPECT_EQ(parse_channel("srb1"), Channel::Srb1);
    EXPECT_FALSE(parse_channel("srb9"));
}
