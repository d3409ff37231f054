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

#include <set>

#include "generators.hpp"
#include "open5g/detail/overloaded.hpp"
#include "open5g/wire/codec.hpp"
#include "open5g/wire/framing.hpp"
#include "open5g/wire/tunnel.hpp"

using namespace open5g;
using namespace open5g::wire;
using open5g::detail::overloaded;

namespace {

// Second encoder written straight from the layout tables, sharing no code
// with the library: header (version, type, length, xid), PORT_MOD (command,
// class, port_id, class fields), FLOW_MOD (command, priority, count, TLVs in
// ascending type order, action), ERROR (code, detail length, detail).
struct RefWriter {
    Bytes b;
    void u8(unsigned v) { b.push_back(static_cast<std::uint8_t>(v & 0xff)); }
    void u16(unsigned v) {
        u8(v >> 8);
        u8(v);
    }
    void u32(std::uint32_t v) {
        u16(v >> 16);
        u16(v & 0xffff);
    }
    void tlv(unsigned type, unsigned len) {
        u16(type);
        u16(len);
    }
};

Bytes reference_encode(const Message &m) {
    RefWriter w;
    unsigned type = std::visit(overloaded{[](const Hello &) { return 1u; }, [](const ErrorBody &) { return 2u; },
                                          [](const PortMod &) { return 3u; }, [](const FlowMod &) { return 4u; }},
                               m.body);
    w.u8(1);
    w.u8(type);
    w.u16(0);
    w.u32(m.xid);
    if (const auto *e = std::get_if<ErrorBody>(&m.body)) {
        w.u16(e->code);
        w.u16(static_cast<unsigned>(e->detail.size()));
        w.b.insert(w.b.end(), e->detail.begin(), e->detail.end());
    }
    if (const auto *p = std::get_if<PortMod>(&m.body)) {
        w.u8(p->command == PortCommand::Create ? 0 : p->command == PortCommand::Modify ? 1 : 2);
        if (!p->spec) {
            w.u8(0xff);
            w.u32(p->port_id);
        } else if (const auto *r = std::get_if<RadioBearer>(&*p->spec)) {
            w.u8(0);
            w.u32(p->port_id);
            w.u16(r->crnti);
            w.u8(r->bearer_id);
            w.u8(r->kind == BearerKind::Srb ? 0 : 1);
            for (const auto &t : r->layer_config) {
                w.tlv(t.type, static_cast<unsigned>(t.value.size()));
                w.b.insert(w.b.end(), t.value.begin(), t.value.end());
            }
        } else if (const auto *g = std::get_if<GtpTunnel>(&*p->spec)) {
            w.u8(1);
            w.u32(p->port_id);
            w.u32(g->local_ip.value());
            w.u32(g->remote_ip.value());
            w.u16(g->udp_port);
            w.u32(g->teid);
        } else {
            const auto &s = std::get<SigTunnel>(*p->spec);
            w.u8(2);
            w.u32(p->port_id);
            w.u32(s.controller_ip.value());
            w.u32(s.tunnel_id);
        }
    }
    if (const auto *f = std::get_if<FlowMod>(&m.body)) {
        w.u8(f->command == FlowCommand::Add ? 0 : 1);
        w.u16(f->priority);
        const auto &mt = f->match;
        w.u8(static_cast<unsigned>(mt.in_port.has_value() + mt.crnti.has_value() + mt.bearer_id.has_value() +
                                   mt.ip_dst.has_value() + mt.ip_proto.has_value() + mt.l4_dst.has_value()));
        if (mt.in_port) {
            w.tlv(1, 4);
            w.u32(*mt.in_port);
        }
        if (mt.crnti) {
            w.tlv(2, 2);
            w.u16(*mt.crnti);
        }
        if (mt.bearer_id) {
            w.tlv(3, 1);
            w.u8(*mt.bearer_id);
        }
        if (mt.ip_dst) {
            w.tlv(4, 4);
            w.u32(mt.ip_dst->value());
        }
        if (mt.ip_proto) {
            w.tlv(5, 1);
            w.u8(*mt.ip_proto);
        }
        if (mt.l4_dst) {
            w.tlv(6, 2);
            w.u16(*mt.l4_dst);
        }
        w.u8(1);
        w.u32(f->action.out_port);
    }
    w.b[2] = static_cast<std::uint8_t>(w.b.size() >> 8);
    w.b[3] = static_cast<std::uint8_t>(w.b.size());
    return w.b;
}

Errc decode_error(const Bytes &data) {
    try {
        decode(data);
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "decode accepted " << to_hex(data);
    return Errc::ParseError;
}

Errc encode_error(const Message &m) {
    try {
        encode(m);
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "encode accepted an invalid message";
    return Errc::ParseError;
}

Message radio_port(Crnti crnti, BearerId bearer, BearerKind kind) {
    return {1, PortMod{PortCommand::Create, 3, RadioBearer{crnti, bearer, kind, {}}}};
}

} // namespace

TEST(WireEncode, HelloIsHeaderOnly) {
    EXPECT_EQ(encode({7, Hello{}}), (Bytes{0x01, 0x01, 0x00, 0x08, 0x00, 0x00, 0x00, 0x07}));
}

TEST(WireEncode, Srb0SigTunnelPortMatchesReferenceBytes) {
    Message m{2, PortMod{PortCommand::Create, 2, SigTunnel{Ipv4Addr(10, 0, 0, 1), 1}}};
    Bytes expected{0x01, 0x03, 0x00, 0x16, 0x00, 0x00, 0x00, 0x02,  // header, length 22
                   0x00, 0x02, 0x00, 0x00, 0x00, 0x02,              // CREATE, sig, port 2
                   0x0a, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01}; // 10.0.0.1, tunnel 1
    EXPECT_EQ(encode(m), expected);
    EXPECT_EQ(decode(expected), m);
}

TEST(WireEncode, ReferenceDrbUplinkRow) {
    // DRB-1 (C-RNTI-1, bearer-id-1) -> OUTPUT LP1
    FlowMatch match;
    match.crnti = 0x3d;
    match.bearer_id = 1;
    Message m{5, FlowMod{FlowCommand::Add, 300, match, FlowAction{ActionKind::Output, 7}}};
    Bytes expected{0x01, 0x04, 0x00, 0x1c, 0x00, 0x00, 0x00, 0x05, // header, length 28
                   0x00, 0x01, 0x2c, 0x02,                         // ADD, prio 300, 2 TLVs
                   0x00, 0x02, 0x00, 0x02, 0x00, 0x3d,             // CRNTI
                   0x00, 0x03, 0x00, 0x01, 0x01,                   // BEARER_ID
                   0x01, 0x00, 0x00, 0x00, 0x07};                  // OUTPUT port 7
    EXPECT_EQ(encode(m), expected);
    EXPECT_EQ(decode(expected), m);
}

TEST(WireEncode, GtpPortAndErrorLayouts) {
    Message gtp{9, PortMod{PortCommand::Modify, 7, GtpTunnel{Ipv4Addr(10, 0, 1, 1), Ipv4Addr(10, 0, 0, 2), 2152, 1}}};
    Bytes expected{0x01, 0x03, 0x00, 0x1c, 0x00, 0x00, 0x00, 0x09, 0x01, 0x01, 0x00, 0x00, 0x00, 0x07,
                   0x0a, 0x00, 0x01, 0x01, 0x0a, 0x00, 0x00, 0x02, 0x08, 0x68, 0x00, 0x00, 0x00, 0x01};
    EXPECT_EQ(encode(gtp), expected);

    Message err{4, ErrorBody{19, to_bytes("ab")}};
    EXPECT_EQ(encode(err), (Bytes{0x01, 0x02, 0x00, 0x0e, 0x00, 0x00, 0x00, 0x04, 0x00, 0x13, 0x00, 0x02, 'a', 'b'}));

    Message del{4, PortMod{PortCommand::Delete, 5, std::nullopt}};
    EXPECT_EQ(encode(del), (Bytes{0x01, 0x03, 0x00, 0x0e, 0x00, 0x00, 0x00, 0x04, 0x02, 0xff, 0x00, 0x00, 0x00, 0x05}));
}

TEST(WireEncode, RadioPortCarriesConfigTlvs) {
    RadioBearer r{0x3d, 1, BearerKind::Drb, {{2, to_bytes("x")}, {3, {}}}};
    Message m{1, PortMod{PortCommand::Create, 5, r}};
    Bytes expected{0x01, 0x03, 0x00, 0x1b, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x00, 0x00, 0x05,
                   0x00, 0x3d, 0x01, 0x01, 0x00, 0x02, 0x00, 0x01, 'x',  0x00, 0x03, 0x00, 0x00};
    EXPECT_EQ(encode(m), expected);
    EXPECT_EQ(decode(expected), m);
}

TEST(WireEncode, MatchesReferenceEncoderOnRandomMessages) {
    gen::Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        auto m = gen::random_message(rng);
        ASSERT_EQ(encode(m), reference_encode(m)) << "case " << i;
    }
}

TEST(WireEncode, LengthFieldEqualsEncodedSize) {
    gen::Rng rng(12);
    for (int i = 0; i < 2000; ++i) {
        auto bytes = encode(gen::random_message(rng));
        ASSERT_EQ((bytes[2] << 8) | bytes[3], static_cast<int>(bytes.size()));
    }
}

TEST(WireEncode, IsDeterministic) {
    gen::Rng a(99), b(99);
    for (int i = 0; i < 200; ++i) {
        EXPECT_EQ(encode(gen::random_message(a)), encode(gen::random_message(b)));
    }
}

TEST(WireEncode, RejectsInvalidRadioPorts) {
    EXPECT_EQ(encode_error(radio_port(0x3d, 1, BearerKind::Srb)), Errc::InvalidMessage);
    EXPECT_EQ(encode_error(radio_port(0x3d, 2, BearerKind::Srb)), Errc::InvalidMessage);
    EXPECT_EQ(encode_error(radio_port(0x3d, 3, BearerKind::Drb)), Errc::InvalidMessage);
    EXPECT_EQ(encode_error(radio_port(0x3d, 32, BearerKind::Drb)), Errc::InvalidMessage);
    EXPECT_EQ(encode_error(radio_port(65524, 1, BearerKind::Drb)), Errc::InvalidMessage);
    EXPECT_EQ(encode_error(radio_port(0, 3, BearerKind::Srb)), Errc::InvalidMessage);
    EXPECT_EQ(encode_error(radio_port(0x3d, 0, BearerKind::Srb)), Errc::InvalidMessage);
    EXPECT_NO_THROW(encode(radio_port(0, 0, BearerKind::Srb)));
    EXPECT_NO_THROW(encode(radio_port(65523, 31, BearerKind::Drb)));
}

TEST(WireEncode, RejectsInvalidFlowAndPortMods) {
    EXPECT_EQ(encode_error({1, FlowMod{FlowCommand::Add, 1, FlowMatch{}, FlowAction{}}}), Errc::InvalidMessage);
    FlowMatch half;
    half.crnti = 5;
    EXPECT_EQ(encode_error({1, FlowMod{FlowCommand::Add, 1, half, FlowAction{}}}), Errc::InvalidMessage);
    EXPECT_EQ(encode_error({1, PortMod{PortCommand::Delete, 1, SigTunnel{}}}), Errc::InvalidMessage);
    EXPECT_EQ(encode_error({1, PortMod{PortCommand::Create, 1, std::nullopt}}), Errc::InvalidMessage);
}

TEST(WireDecode, HelloBytes) {
    auto m = decode(Bytes{0x01, 0x01, 0x00, 0x08, 0x00, 0x00, 0x00, 0x07});
    EXPECT_EQ(m, (Message{7, Hello{}}));
    EXPECT_EQ(m.type(), MsgType::Hello);
}

TEST(WireDecode, HeaderErrorsHaveDistinctCodes) {
    EXPECT_EQ(decode_error({}), Errc::Truncated);
    EXPECT_EQ(decode_error({0x01, 0x01, 0x00, 0x08}), Errc::Truncated);
    EXPECT_EQ(decode_error({0x02, 0x01, 0x00, 0x08, 0, 0, 0, 7}), Errc::BadVersion);
    EXPECT_EQ(decode_error({0x01, 0x00, 0x00, 0x08, 0, 0, 0, 7}), Errc::UnknownType);
    EXPECT_EQ(decode_error({0x01, 0x05, 0x00, 0x08, 0, 0, 0, 7}), Errc::UnknownType);
    EXPECT_EQ(decode_error({0x01, 0x01, 0x00, 0x04, 0, 0, 0, 7}), Errc::BadLength);
    EXPECT_EQ(decode_error({0x01, 0x01, 0x00, 0x10, 0, 0, 0, 7}), Errc::Truncated);
    EXPECT_EQ(decode_error({0x01, 0x01, 0x00, 0x08, 0, 0, 0, 7, 0}), Errc::BadLength);
}

TEST(WireDecode, BodyErrorsAreMalformedTlv) {
    // HELLO with a body byte
    EXPECT_EQ(decode_error({0x01, 0x01, 0x00, 0x09, 0, 0, 0, 1, 0xaa}), Errc::MalformedTlv);
    // PORT_MOD with unknown command 3
    EXPECT_EQ(decode_error({0x01, 0x03, 0x00, 0x0e, 0, 0, 0, 1, 0x03, 0xff, 0, 0, 0, 1}), Errc::MalformedTlv);
    // PORT_MOD with unknown class 4
    EXPECT_EQ(decode_error({0x01, 0x03, 0x00, 0x0e, 0, 0, 0, 1, 0x02, 0x04, 0, 0, 0, 1}), Errc::MalformedTlv);
    // sig port body cut short
    EXPECT_EQ(decode_error({0x01, 0x03, 0x00, 0x10, 0, 0, 0, 1, 0x00, 0x02, 0, 0, 0, 1, 10, 0}), Errc::MalformedTlv);
    // config TLV length past the end
    EXPECT_EQ(decode_error({0x01, 0x03, 0x00, 0x16, 0, 0, 0, 1, 0x00, 0x00, 0, 0, 0, 1, 0, 0x3d, 1, 1, 0, 2, 0, 9}),
              Errc::MalformedTlv);

    auto flow = [](std::initializer_list<std::uint8_t> tlvs, std::uint8_t count) {
        Bytes b{0x01, 0x04, 0x00, 0x00, 0, 0, 0, 1, 0x00, 0x00, 0x01, count};
        b.insert(b.end(), tlvs);
        b.insert(b.end(), {0x01, 0, 0, 0, 2});
        b[3] = static_cast<std::uint8_t>(b.size());
        return b;
    };
    EXPECT_NO_THROW(decode(flow({0, 5, 0, 1, 6}, 1)));
    EXPECT_EQ(decode_error(flow({0, 9, 0, 1, 6}, 1)), Errc::MalformedTlv);              // unknown field
    EXPECT_EQ(decode_error(flow({0, 5, 0, 2, 0, 6}, 1)), Errc::MalformedTlv);           // bad width
    EXPECT_EQ(decode_error(flow({0, 5, 0, 1, 6, 0, 5, 0, 1, 6}, 2)), Errc::MalformedTlv); // duplicate
    EXPECT_EQ(decode_error(flow({0, 5, 0, 1, 6}, 2)), Errc::MalformedTlv);              // count too high

    auto bad_action = flow({0, 5, 0, 1, 6}, 1);
    bad_action[bad_action.size() - 5] = 0x02;
    EXPECT_EQ(decode_error(bad_action), Errc::MalformedTlv);
}

TEST(WireDecode, StructuralViolationsAreInvalidMessage) {
    // SRB with bearer 1
    EXPECT_EQ(decode_error({0x01, 0x03, 0x00, 0x12, 0, 0, 0, 1, 0x00, 0x00, 0, 0, 0, 1, 0, 0x3d, 1, 0}),
              Errc::InvalidMessage);
    // flow with an empty match
    EXPECT_EQ(decode_error({0x01, 0x04, 0x00, 0x11, 0, 0, 0, 1, 0x00, 0x00, 0x01, 0x00, 0x01, 0, 0, 0, 2}),
              Errc::InvalidMessage);
}

TEST(WireDecode, NonCanonicalTlvOrderDecodes) {
    Bytes b{0x01, 0x04, 0x00, 0x00, 0, 0, 0, 1, 0x00, 0x00, 0x01, 0x02, 0, 6, 0, 2, 0, 43, 0, 5, 0, 1, 6, 0x01, 0, 0, 0, 2};
    b[3] = static_cast<std::uint8_t>(b.size());
    auto m = decode(b);
    const auto &fm = std::get<FlowMod>(m.body);
    EXPECT_EQ(fm.match.l4_dst, 43);
    EXPECT_EQ(fm.match.ip_proto, 6);
    EXPECT_EQ(decode(encode(m)), m);
}

TEST(WireRoundTrip, RandomMessages) {
    gen::Rng rng(1);
    std::set<std::pair<int, int>> seen; // (type, port class or flow command)
    for (int i = 0; i < 5000; ++i) {
        auto m = gen::random_message(rng);
        ASSERT_EQ(decode(encode(m)), m) << "case " << i;
        int sub = -1;
        if (const auto *pm = std::get_if<PortMod>(&m.body)) {
            sub = pm->spec ? static_cast<int>(pm->spec->index()) : 9;
        }
        seen.insert({static_cast<int>(m.type()), sub});
    }
    // every type and every PortSpec variant, plus spec-less DELETE
    EXPECT_TRUE(seen.count({1, -1}) && seen.count({2, -1}) && seen.count({4, -1}));
    for (int cls : {0, 1, 2, 9}) {
        EXPECT_TRUE(seen.count({3, cls})) << "port class " << cls;
    }
}

TEST(WireDecode, FuzzedInputsNeverEscapeAsUnstructuredErrors) {
    const std::set<Errc> allowed{Errc::Truncated, Errc::BadVersion, Errc::UnknownType, Errc::BadLength,
                                 Errc::MalformedTlv, Errc::InvalidMessage};
    gen::Rng rng(5);
    for (int i = 0; i < 20000; ++i) {
        Bytes data;
        if (i % 2 == 0) {
            data = gen::random_bytes(rng, 64);
        } else {
            // valid frame with a few corrupted bytes keeps the fuzzer past the header checks
            data = encode(gen::random_message(rng));
            for (int k = 0, n = static_cast<int>(gen::uniform(rng, 1, 3)); k < n; ++k) {
                data[gen::uniform(rng, 0, data.size() - 1)] ^= static_cast<std::uint8_t>(gen::uniform(rng, 1, 255));
            }
        }
        try {
            auto m = decode(data);
            ASSERT_EQ(decode(encode(m)), m);
        } catch (const Error &e) {
            ASSERT_TRUE(allowed.count(e.code())) << to_string(e.code());
        }
    }
}

TEST(WireStream, SplitsConcatenatedMessages) {
    auto a = encode({1, Hello{}});
    auto b = encode({2, PortMod{PortCommand::Delete, 4, std::nullopt}});
    Bytes both = a;
    both.insert(both.end(), b.begin(), b.end());
    auto split = split_stream(both);
    ASSERT_EQ(split.messages.size(), 2u);
    EXPECT_FALSE(split.framing_error);
    EXPECT_EQ(decode(split.messages[1]), (Message{2, PortMod{PortCommand::Delete, 4, std::nullopt}}));

    both.push_back(0x01);
    split = split_stream(both);
    EXPECT_EQ(split.messages.size(), 2u);
    EXPECT_EQ(split.framing_error, Errc::Truncated);
    EXPECT_EQ(split.remainder.size(), 1u);
}

TEST(Gtpu, EncapDecapRoundTrip) {
    auto frame = encap_gtpu(to_bytes("abc"), 1);
    EXPECT_EQ(frame, (Bytes{0x30, 0xff, 0x00, 0x03, 0x00, 0x00, 0x00, 0x01, 'a', 'b', 'c'}));
    EXPECT_EQ(decap_gtpu(frame), (GtpuFrame{1, to_bytes("abc")}));
    EXPECT_EQ(encap_gtpu({}, 7).size(), kTunnelHeaderSize);
}

TEST(Gtpu, DecapErrors) {
    auto code = [](const Bytes &b) {
        try {
            decap_gtpu(b);
        } catch (const Error &e) {
            return e.code();
        }
        return Errc::ParseError;
    };
    EXPECT_EQ(code({0x30, 0xff, 0, 0, 0, 0, 0}), Errc::Truncated);
    EXPECT_EQ(code({0x32, 0xff, 0, 0, 0, 0, 0, 1}), Errc::BadGtpuFlags);
    EXPECT_EQ(code({0x30, 0x01, 0, 0, 0, 0, 0, 1}), Errc::BadGtpuFlags);
    EXPECT_EQ(code({0x30, 0xff, 0, 2, 0, 0, 0, 1, 'a'}), Errc::Truncated);
    EXPECT_EQ(code({0x30, 0xff, 0, 1, 0, 0, 0, 1, 'a', 'b'}), Errc::BadLength);
    Bytes big(65536);
    EXPECT_THROW(encap_gtpu(big, 1), Error);
    big.pop_back();
    EXPECT_EQ(decap_gtpu(encap_gtpu(big, 1)).payload.size(), 65535u);
}

TEST(SigTunnel, EncapDecapRoundTrip) {
    auto frame = encap_sig(to_bytes("rrc-bytes"), 2);
    Bytes header(frame.begin(), frame.begin() + 8);
    EXPECT_EQ(header, (Bytes{0x20, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x02}));
    EXPECT_EQ(decap_sig(frame), (SigTunnelFrame{2, to_bytes("rrc-bytes")}));
    EXPECT_EQ(encap_sig({}, 9).size(), kTunnelHeaderSize);
}

TEST(SigTunnel, DecapErrors) {
    auto code = [](const Bytes &b) {
        try {
            decap_sig(b);
        } catch (const Error &e) {
            return e.code();
        }
        return Errc::ParseError;
    };
    EXPECT_EQ(code({0x20, 0, 0, 0, 0, 0, 0}), Errc::Truncated);
    EXPECT_EQ(code({0x00, 0, 0, 0, 0, 0, 0, 2}), Errc::BadSigFlags);
    EXPECT_EQ(code({0x20, 0, 0x08, 0, 0, 0, 0, 2}), Errc::BadSigFlags);
}

TEST(Framing, Srb0EnvelopeRoundTrip) {
    auto wrapped = wrap_srb0(0xdeadbeef, to_bytes("hi"));
    EXPECT_EQ(wrapped, (Bytes{0xde, 0xad, 0xbe, 0xef, 0x00, 0x02, 'h', 'i'}));
    EXPECT_EQ(unwrap_srb0(wrapped), (Srb0Envelope{0xdeadbeef, to_bytes("hi")}));
    EXPECT_THROW(unwrap_srb0(Bytes{0, 0, 0, 1, 0}), Error);
    EXPECT_THROW(unwrap_srb0(Bytes{0, 0, 0, 1, 0, 3, 'a'}), Error);
}

TEST(Framing, PseudoIpRoundTrip) {
    PseudoIpPacket p{Ipv4Addr(10, 45, 0, 2), kIpProtoTcp, 34, to_bytes("data")};
    auto bytes = make_pseudo_ip(p);
    EXPECT_EQ(bytes.size(), kPseudoIpHeaderSize + 4);
    EXPECT_EQ(parse_pseudo_ip(bytes), p);
    bytes.pop_back();
    EXPECT_FALSE(parse_pseudo_ip(bytes));
    EXPECT_FALSE(parse_pseudo_ip(Bytes{1, 2, 3}));
}
