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

#include "open5g/wire/codec.hpp"

#include "open5g/detail/overloaded.hpp"

#include <string>

namespace open5g::wire {

namespace {

using detail::overloaded;

[[noreturn]] void invalid(const std::string &why) {
    throw Error(Errc::InvalidMessage, "InvalidMessage: " + why);
}

[[noreturn]] void malformed(const std::string &why) {
    throw Error(Errc::MalformedTlv, "MalformedTlv: " + why);
}

bool is_srb_bearer(BearerId id) {
    return id == kSrb0BearerId || id == kSrb1BearerId || id == kSrb2BearerId;
}

void validate_radio(const RadioBearer &radio) {
    if (radio.bearer_id > kMaxBearerId) {
        invalid("bearer_id above " + std::to_string(kMaxBearerId));
    }
    if (radio.crnti > kMaxCrnti) {
        invalid("crnti above " + std::to_string(kMaxCrnti));
    }
    if (radio.kind == BearerKind::Srb && !is_srb_bearer(radio.bearer_id)) {
        invalid("SRB bearer_id must be 0, 3 or 4");
    }
    if (radio.kind == BearerKind::Drb && (is_srb_bearer(radio.bearer_id))) {
        invalid("DRB bearer_id collides with an SRB id");
    }
    // only the common SRB0 port is keyed by the zero C-RNTI
    bool common = radio.bearer_id == kSrb0BearerId;
    if (common != (radio.crnti == kCommonCrnti)) {
        invalid("crnti 0 is reserved for the common SRB0 port");
    }
    for (const auto &tlv : radio.layer_config) {
        if (tlv.value.size() > 0xffff) {
            invalid("config TLV value too long");
        }
    }
}

void validate_match(const FlowMatch &match) {
    if (match.empty()) {
        invalid("flow match has no fields");
    }
    if (match.crnti.has_value() != match.bearer_id.has_value()) {
        invalid("crnti and bearer_id must appear together");
    }
}

// --- encoding ---------------------------------------------------------------

void encode_port_spec(ByteWriter &w, const PortSpec &spec) {
    std::visit(overloaded{
                   [&](const RadioBearer &r) {
                       w.u16(r.crnti);
                       w.u8(r.bearer_id);
                       w.u8(static_cast<std::uint8_t>(r.kind));
                       for (const auto &tlv : r.layer_config) {
                           w.u16(tlv.type);
                           w.u16(static_cast<std::uint16_t>(tlv.value.size()));
                           w.raw(tlv.value);
                       }
                   },
                   [&](const GtpTunnel &g) {
                       w.ipv4(g.local_ip);
                       w.ipv4(g.remote_ip);
                       w.u16(g.udp_port);
                       w.u32(g.teid);
                   },
                   [&](const SigTunnel &s) {
                       w.ipv4(s.controller_ip);
                       w.u32(s.tunnel_id);
                   },
               },
               spec);
}

void encode_match_tlv(ByteWriter &w, MatchField field, std::uint16_t len) {
    w.u16(static_cast<std::uint16_t>(field));
    w.u16(len);
}

void encode_flow_mod(ByteWriter &w, const FlowMod &fm) {
    w.u8(static_cast<std::uint8_t>(fm.command));
    w.u16(fm.priority);
    const auto &m = fm.match;
    w.u8(static_cast<std::uint8_t>(m.field_count()));
    // canonical order: ascending TLV type
    if (m.in_port) {
        encode_match_tlv(w, MatchField::InPort, 4);
        w.u32(*m.in_port);
    }
    if (m.crnti) {
        encode_match_tlv(w, MatchField::Crnti, 2);
        w.u16(*m.crnti);
    }
    if (m.bearer_id) {
        encode_match_tlv(w, MatchField::BearerId, 1);
        w.u8(*m.bearer_id);
    }
    if (m.ip_dst) {
        encode_match_tlv(w, MatchField::IpDst, 4);
        w.ipv4(*m.ip_dst);
    }
    if (m.ip_proto) {
        encode_match_tlv(w, MatchField::IpProto, 1);
        w.u8(*m.ip_proto);
    }
    if (m.l4_dst) {
        encode_match_tlv(w, MatchField::L4Dst, 2);
        w.u16(*m.l4_dst);
    }
    w.u8(static_cast<std::uint8_t>(fm.action.kind));
    w.u32(fm.action.out_port);
}

// --- decoding ---------------------------------------------------------------

std::vector<ConfigTlv> decode_config_tlvs(ByteReader &r) {
    std::vector<ConfigTlv> out;
    while (!r.empty()) {
        ConfigTlv tlv;
        tlv.type = r.u16();
        auto len = r.u16();
        auto value = r.take(len);
        tlv.value.assign(value.begin(), value.end());
        out.push_back(std::move(tlv));
    }
    return out;
}

PortMod decode_port_mod(ByteReader &r) {
    PortMod pm;
    auto command = r.u8();
    if (command > static_cast<std::uint8_t>(PortCommand::Delete)) {
        malformed("port command " + std::to_string(command));
    }
    pm.command = static_cast<PortCommand>(command);
    auto cls = static_cast<PortClass>(r.u8());
    pm.port_id = r.u32();
    switch (cls) {
    case PortClass::Radio: {
        RadioBearer radio;
        radio.crnti = r.u16();
        radio.bearer_id = r.u8();
        auto kind = r.u8();
        if (kind > static_cast<std::uint8_t>(BearerKind::Drb)) {
            malformed("bearer kind " + std::to_string(kind));
        }
        radio.kind = static_cast<BearerKind>(kind);
        radio.layer_config = decode_config_tlvs(r);
        pm.spec = std::move(radio);
        break;
    }
    case PortClass::Gtp: {
        GtpTunnel gtp;
        gtp.local_ip = r.ipv4();
        gtp.remote_ip = r.ipv4();
        gtp.udp_port = r.u16();
        gtp.teid = r.u32();
        pm.spec = gtp;
        break;
    }
    case PortClass::Sig: {
        SigTunnel sig;
        sig.controller_ip = r.ipv4();
        sig.tunnel_id = r.u32();
        pm.spec = sig;
        break;
    }
    case PortClass::None:
        break;
    default:
        malformed("port class " + std::to_string(static_cast<int>(cls)));
    }
    return pm;
}

template <class T>
void set_once(std::optional<T> &slot, T value, MatchField field) {
    if (slot.has_value()) {
        malformed("duplicate match field " + std::to_string(static_cast<int>(field)));
    }
    slot = value;
}

FlowMod decode_flow_mod(ByteReader &r) {
    FlowMod fm;
    auto command = r.u8();
    if (command > static_cast<std::uint8_t>(FlowCommand::Delete)) {
        malformed("flow command " + std::to_string(command));
    }
    fm.command = static_cast<FlowCommand>(command);
    fm.priority = r.u16();
    auto count = r.u8();
    for (unsigned i = 0; i < count; ++i) {
        auto field = static_cast<MatchField>(r.u16());
        auto len = r.u16();
        ByteReader value(r.take(len), Errc::MalformedTlv);
        auto expect_len = [&](std::uint16_t want) {
            if (len != want) {
                malformed("match field " + std::to_string(static_cast<int>(field)) + " has length " +
                          std::to_string(len));
            }
        };
        auto &m = fm.match;
        switch (field) {
        case MatchField::InPort:
            expect_len(4);
            set_once(m.in_port, value.u32(), field);
            break;
        case MatchField::Crnti:
            expect_len(2);
            set_once(m.crnti, value.u16(), field);
            break;
        case MatchField::BearerId:
            expect_len(1);
            set_once(m.bearer_id, value.u8(), field);
            break;
        case MatchField::IpDst:
            expect_len(4);
            set_once(m.ip_dst, value.ipv4(), field);
            break;
        case MatchField::IpProto:
            expect_len(1);
            set_once(m.ip_proto, value.u8(), field);
            break;
        case MatchField::L4Dst:
            expect_len(2);
            set_once(m.l4_dst, value.u16(), field);
            break;
        default:
            malformed("unknown match field " + std::to_string(static_cast<int>(field)));
        }
    }
    auto kind = r.u8();
    if (kind != static_cast<std::uint8_t>(ActionKind::Output)) {
        malformed("action kind " + std::to_string(kind));
    }
    fm.action.kind = ActionKind::Output;
    fm.action.out_port = r.u32();
    return fm;
}

} // namespace

PortClass port_class(const PortSpec &spec) {
    return static_cast<PortClass>(spec.index());
}

std::size_t FlowMatch::field_count() const {
    return std::size_t{in_port.has_value()} + crnti.has_value() + bearer_id.has_value() +
           ip_dst.has_value() + ip_proto.has_value() + l4_dst.has_value();
}

MsgType Message::type() const {
    return std::visit(overloaded{
                          [](const Hello &) { return MsgType::Hello; },
                          [](const ErrorBody &) { return MsgType::Error; },
                          [](const PortMod &) { return MsgType::PortMod; },
                          [](const FlowMod &) { return MsgType::FlowMod; },
                      },
                      body);
}

std::string_view to_string(MsgType type) {
    switch (type) {
    case MsgType::Hello: return "HELLO";
    case MsgType::Error: return "ERROR";
    case MsgType::PortMod: return "PORT_MOD";
    case MsgType::FlowMod: return "FLOW_MOD";
    }
    return "UNKNOWN";
}

void validate(const Message &msg) {
    std::visit(overloaded{
                   [](const Hello &) {},
                   [](const ErrorBody &e) {
                       if (e.detail.size() > 0xffff) {
                           invalid("error detail too long");
                       }
                   },
                   [](const PortMod &pm) {
                       if (pm.command == PortCommand::Delete) {
                           if (pm.spec) {
                               invalid("DELETE carries no port spec");
                           }
                           return;
                       }
                       if (!pm.spec) {
                           invalid("CREATE/MODIFY needs a port spec");
                       }
                       if (const auto *radio = std::get_if<RadioBearer>(&*pm.spec)) {
                           validate_radio(*radio);
                       }
                   },
                   [](const FlowMod &fm) {
                       validate_match(fm.match);
                       if (fm.action.kind != ActionKind::Output) {
                           invalid("unsupported action");
                       }
                   },
               },
               msg.body);
}

Bytes encode(const Message &msg) {
    validate(msg);
    ByteWriter w;
    w.u8(kVersion);
    w.u8(static_cast<std::uint8_t>(msg.type()));
    w.u16(0); // patched below
    w.u32(msg.xid);
    std::visit(overloaded{
                   [](const Hello &) {},
                   [&](const ErrorBody &e) {
                       w.u16(e.code);
                       w.u16(static_cast<std::uint16_t>(e.detail.size()));
                       w.raw(e.detail);
                   },
                   [&](const PortMod &pm) {
                       w.u8(static_cast<std::uint8_t>(pm.command));
                       w.u8(static_cast<std::uint8_t>(pm.spec ? port_class(*pm.spec) : PortClass::None));
                       w.u32(pm.port_id);
                       if (pm.spec) {
                           encode_port_spec(w, *pm.spec);
                       }
                   },
                   [&](const FlowMod &fm) { encode_flow_mod(w, fm); },
               },
               msg.body);
    if (w.size() > kMaxMessageSize) {
        invalid("encoded size " + std::to_string(w.size()) + " exceeds 65535");
    }
    w.patch_u16(2, static_cast<std::uint16_t>(w.size()));
    return std::move(w).take();
}

Message decode(ByteView data) {
    ByteReader header(data, Errc::Truncated);
    auto version = header.u8();
    auto type = header.u8();
    auto length = header.u16();
    auto xid = header.u32();
    if (version != kVersion) {
        throw Error(Errc::BadVersion);
    }
    if (type < static_cast<std::uint8_t>(MsgType::Hello) || type > static_cast<std::uint8_t>(MsgType::FlowMod)) {
        throw Error(Errc::UnknownType);
    }
    if (length < kHeaderSize) {
        throw Error(Errc::BadLength, "BadLength: length field below header size");
    }
    if (data.size() < length) {
        throw Error(Errc::Truncated);
    }
    if (data.size() > length) {
        throw Error(Errc::BadLength, "BadLength: trailing bytes after message");
    }

    Message msg;
    msg.xid = xid;
    ByteReader body(data.subspan(kHeaderSize), Errc::MalformedTlv);
    switch (static_cast<MsgType>(type)) {
    case MsgType::Hello:
        msg.body = Hello{};
        break;
    case MsgType::Error: {
        ErrorBody e;
        e.code = body.u16();
        auto detail = body.take(body.u16());
        e.detail.assign(detail.begin(), detail.end());
        msg.body = std::move(e);
        break;
    }
    case MsgType::PortMod:
        msg.body = decode_port_mod(body);
        break;
    case MsgType::FlowMod:
        msg.body = decode_flow_mod(body);
        break;
    }
    if (!body.empty()) {
        malformed("trailing body bytes");
    }
    validate(msg);
    return msg;
}

StreamSplit split_stream(ByteView data) {
    StreamSplit out;
    while (!data.empty()) {
        if (data.size() < kHeaderSize) {
            out.framing_error = Errc::Truncated;
            break;
        }
        std::size_t length = (std::size_t{data[2]} << 8) | data[3];
        if (length < kHeaderSize) {
            out.framing_error = Errc::BadLength;
            break;
        }
        if (length > data.size()) {
            out.framing_error = Errc::Truncated;
            break;
        }
        out.messages.push_back(data.first(length));
        data = data.subspan(length);
    }
    out.remainder = data;
    return out;
}

} // namespace open5g::wire
