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

#include "open5g/wire/tunnel.hpp"

namespace open5g::wire {

namespace {

void check_payload_size(ByteView payload) {
    if (payload.size() > 0xffff) {
        throw Error(Errc::InvalidMessage, "InvalidMessage: tunnel payload exceeds 65535 bytes");
    }
}

} // namespace

Bytes encap_gtpu(ByteView payload, Teid teid) {
    check_payload_size(payload);
    ByteWriter w;
    w.u8(kGtpuFlags);
    w.u8(kGtpuGpdu);
    w.u16(static_cast<std::uint16_t>(payload.size()));
    w.u32(teid);
    w.raw(payload);
    return std::move(w).take();
}

GtpuFrame decap_gtpu(ByteView frame) {
    ByteReader r(frame, Errc::Truncated);
    auto flags = r.u8();
    auto type = r.u8();
    auto length = r.u16();
    GtpuFrame out;
    out.teid = r.u32();
    if (flags != kGtpuFlags || type != kGtpuGpdu) {
        throw Error(Errc::BadGtpuFlags);
    }
    auto payload = r.take(length);
    if (!r.empty()) {
        throw Error(Errc::BadLength, "BadLength: bytes after GTP-U payload");
    }
    out.payload.assign(payload.begin(), payload.end());
    return out;
}

Bytes encap_sig(ByteView payload, TunnelId tunnel_id) {
    check_payload_size(payload);
    ByteWriter w;
    w.u16(kSigFlags);
    w.u16(kSigProtocol);
    w.u32(tunnel_id);
    w.raw(payload);
    return std::move(w).take();
}

SigTunnelFrame decap_sig(ByteView frame) {
    ByteReader r(frame, Errc::Truncated);
    auto flags = r.u16();
    auto protocol = r.u16();
    SigTunnelFrame out;
    out.tunnel_id = r.u32();
    if (flags != kSigFlags || protocol != kSigProtocol) {
        throw Error(Errc::BadSigFlags);
    }
    auto payload = r.rest();
    out.payload.assign(payload.begin(), payload.end());
    return out;
}

} // namespace open5g::wire
