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

#include "open5g/wire/framing.hpp"

namespace open5g::wire {

Bytes wrap_srb0(std::uint32_t ue_tmp_id, ByteView message) {
    if (message.size() > 0xffff) {
        throw Error(Errc::InvalidMessage, "InvalidMessage: SRB0 message exceeds 65535 bytes");
    }
    ByteWriter w;
    w.u32(ue_tmp_id);
    w.u16(static_cast<std::uint16_t>(message.size()));
    w.raw(message);
    return std::move(w).take();
}

Srb0Envelope unwrap_srb0(ByteView payload) {
    ByteReader r(payload, Errc::Truncated);
    Srb0Envelope env;
    env.ue_tmp_id = r.u32();
    auto body = r.take(r.u16());
    if (!r.empty()) {
        throw Error(Errc::BadLength, "BadLength: bytes after SRB0 message");
    }
    env.message.assign(body.begin(), body.end());
    return env;
}

Bytes make_pseudo_ip(const PseudoIpPacket &packet) {
    if (packet.data.size() > 0xffff) {
        throw Error(Errc::InvalidMessage, "InvalidMessage: packet data exceeds 65535 bytes");
    }
    ByteWriter w;
    w.ipv4(packet.ip_dst);
    w.u8(packet.ip_proto);
    w.u16(packet.l4_dst);
    w.u16(static_cast<std::uint16_t>(packet.data.size()));
    w.raw(packet.data);
    return std::move(w).take();
}

std::optional<PseudoIpPacket> parse_pseudo_ip(ByteView bytes) {
    if (bytes.size() < kPseudoIpHeaderSize) {
        return std::nullopt;
    }
    ByteReader r(bytes, Errc::Truncated);
    PseudoIpPacket packet;
    packet.ip_dst = r.ipv4();
    packet.ip_proto = r.u8();
    packet.l4_dst = r.u16();
    auto len = r.u16();
    if (r.remaining() != len) {
        return std::nullopt;
    }
    auto data = r.rest();
    packet.data.assign(data.begin(), data.end());
    return packet;
}

} // namespace open5g::wire
