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

#include "open5g/ctrl/messages.hpp"

#include <string>

#include "open5g/detail/overloaded.hpp"

namespace open5g::ctrl {

namespace {

using detail::overloaded;

void write_blob(ByteWriter &w, const Bytes &blob) {
    if (blob.size() > 0xffff) {
        throw Error(Errc::InvalidMessage, "InvalidMessage: blob exceeds 65535 bytes");
    }
    w.u16(static_cast<std::uint16_t>(blob.size()));
    w.raw(blob);
}

Bytes read_blob(ByteReader &r) {
    auto view = r.take(r.u16());
    return Bytes(view.begin(), view.end());
}

void write_count(ByteWriter &w, std::size_t n) {
    if (n > 0xff) {
        throw Error(Errc::InvalidMessage, "InvalidMessage: list longer than 255");
    }
    w.u8(static_cast<std::uint8_t>(n));
}

} // namespace

std::string_view rrc_name(const RrcMessage &msg) {
    static constexpr std::string_view names[] = {
        "RRCSetupRequest",      "RRCSetup",           "RRCSetupComplete",          "SecurityModeCommand",
        "SecurityModeComplete", "RRCReconfiguration", "RRCReconfigurationComplete",
    };
    return names[msg.index()];
}

bool is_uplink(const RrcMessage &msg) {
    return std::holds_alternative<RrcSetupRequest>(msg) || std::holds_alternative<RrcSetupComplete>(msg) ||
           std::holds_alternative<SecurityModeComplete>(msg) || std::holds_alternative<RrcReconfigurationComplete>(msg);
}

Bytes encode_rrc(const RrcMessage &msg) {
    ByteWriter w;
    w.u8(static_cast<std::uint8_t>(msg.index() + 1));
    std::visit(overloaded{
                   [&](const RrcSetupRequest &m) { w.u32(m.ue_tmp_id); },
                   [&](const RrcSetup &m) {
                       w.u16(m.crnti);
                       w.u8(m.srb1_bearer_id);
                   },
                   [&](const RrcSetupComplete &m) {
                       if (m.nas_payload.empty()) {
                           throw Error(Errc::InvalidMessage, "InvalidMessage: RRCSetupComplete without NAS payload");
                       }
                       write_blob(w, m.nas_payload);
                   },
                   [&](const SecurityModeCommand &m) { write_blob(w, m.security_info); },
                   [&](const SecurityModeComplete &) {},
                   [&](const RrcReconfiguration &m) {
                       w.u8(m.srb2_bearer_id);
                       write_count(w, m.drb_bearer_ids.size());
                       for (auto id : m.drb_bearer_ids) {
                           w.u8(id);
                       }
                   },
                   [&](const RrcReconfigurationComplete &) {},
               },
               msg);
    return std::move(w).take();
}

RrcMessage decode_rrc(ByteView data) {
    ByteReader r(data, Errc::MalformedTlv);
    RrcMessage out;
    switch (r.u8()) {
    case 1:
        out = RrcSetupRequest{r.u32()};
        break;
    case 2: {
        RrcSetup m;
        m.crnti = r.u16();
        m.srb1_bearer_id = r.u8();
        out = m;
        break;
    }
    case 3: {
        RrcSetupComplete m{read_blob(r)};
        if (m.nas_payload.empty()) {
            throw Error(Errc::InvalidMessage, "InvalidMessage: RRCSetupComplete without NAS payload");
        }
        out = std::move(m);
        break;
    }
    case 4:
        out = SecurityModeCommand{read_blob(r)};
        break;
    case 5:
        out = SecurityModeComplete{};
        break;
    case 6: {
        RrcReconfiguration m;
        m.srb2_bearer_id = r.u8();
        auto n = r.u8();
        for (unsigned i = 0; i < n; ++i) {
            m.drb_bearer_ids.push_back(r.u8());
        }
        out = std::move(m);
        break;
    }
    case 7:
        out = RrcReconfigurationComplete{};
        break;
    default:
        throw Error(Errc::MalformedTlv, "MalformedTlv: unknown RRC message kind");
    }
    if (!r.empty()) {
        throw Error(Errc::MalformedTlv, "MalformedTlv: trailing RRC bytes");
    }
    return out;
}

std::string_view ngap_name(const NgapMessage &msg) {
    static constexpr std::string_view names[] = {
        "InitialUEMessage",
        "InitialContextSetupRequest",
        "InitialContextSetupResponse",
    };
    return names[msg.index()];
}

Bytes encode_ngap(const NgapMessage &msg) {
    ByteWriter w;
    w.u8(static_cast<std::uint8_t>(msg.index() + 1));
    std::visit(overloaded{
                   [&](const InitialUeMessage &m) {
                       w.u32(m.ran_ue_id);
                       write_blob(w, m.nas_payload);
                   },
                   [&](const InitialContextSetupRequest &m) {
                       w.u32(m.ran_ue_id);
                       write_blob(w, m.security_info);
                       write_count(w, m.sessions.size());
                       for (const auto &s : m.sessions) {
                           w.u32(s.session_id);
                           write_count(w, s.drbs.size());
                           for (auto d : s.drbs) {
                               w.u8(d);
                           }
                           write_count(w, s.flows.size());
                           for (const auto &f : s.flows) {
                               w.u32(f.flow_id);
                               w.ipv4(f.ip_dst);
                               w.u8(f.ip_proto);
                               w.u16(f.l4_dst);
                               w.u8(f.drb);
                           }
                       }
                   },
                   [&](const InitialContextSetupResponse &m) {
                       w.u32(m.ran_ue_id);
                       write_count(w, m.sessions.size());
                       for (const auto &s : m.sessions) {
                           w.u32(s.session_id);
                           w.u32(s.teid);
                           w.ipv4(s.gnb_ip);
                       }
                   },
               },
               msg);
    return std::move(w).take();
}

NgapMessage decode_ngap(ByteView data) {
    ByteReader r(data, Errc::MalformedTlv);
    NgapMessage out;
    switch (r.u8()) {
    case 1: {
        InitialUeMessage m;
        m.ran_ue_id = r.u32();
        m.nas_payload = read_blob(r);
        out = std::move(m);
        break;
    }
    case 2: {
        InitialContextSetupRequest m;
        m.ran_ue_id = r.u32();
        m.security_info = read_blob(r);
        auto sessions = r.u8();
        for (unsigned i = 0; i < sessions; ++i) {
            PduSessionSpec s;
            s.session_id = r.u32();
            auto drbs = r.u8();
            for (unsigned j = 0; j < drbs; ++j) {
                s.drbs.push_back(r.u8());
            }
            auto flows = r.u8();
            for (unsigned j = 0; j < flows; ++j) {
                QosFlowSpec f;
                f.flow_id = r.u32();
                f.ip_dst = r.ipv4();
                f.ip_proto = r.u8();
                f.l4_dst = r.u16();
                f.drb = r.u8();
                s.flows.push_back(f);
            }
            m.sessions.push_back(std::move(s));
        }
        out = std::move(m);
        break;
    }
    case 3: {
        InitialContextSetupResponse m;
        m.ran_ue_id = r.u32();
        auto n = r.u8();
        for (unsigned i = 0; i < n; ++i) {
            SessionSetupResult s;
            s.session_id = r.u32();
            s.teid = r.u32();
            s.gnb_ip = r.ipv4();
            m.sessions.push_back(s);
        }
        out = std::move(m);
        break;
    }
    default:
        throw Error(Errc::MalformedTlv, "MalformedTlv: unknown NGAP message kind");
    }
    if (!r.empty()) {
        throw Error(Errc::MalformedTlv, "MalformedTlv: trailing NGAP bytes");
    }
    return out;
}

} // namespace open5g::ctrl
