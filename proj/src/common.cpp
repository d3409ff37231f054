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

#include <charconv>

#include "open5g/bytes.hpp"
#include "open5g/error.hpp"

namespace open5g {

std::string_view to_string(Errc code) {
    switch (code) {
    case Errc::Truncated: return "Truncated";
    case Errc::BadVersion: return "BadVersion";
    case Errc::UnknownType: return "UnknownType";
    case Errc::MalformedTlv: return "MalformedTlv";
    case Errc::BadLength: return "BadLength";
    case Errc::InvalidMessage: return "InvalidMessage";
    case Errc::BadGtpuFlags: return "BadGtpuFlags";
    case Errc::BadSigFlags: return "BadSigFlags";
    case Errc::DuplicatePort: return "DuplicatePort";
    case Errc::UnknownPort: return "UnknownPort";
    case Errc::DuplicateBearer: return "DuplicateBearer";
    case Errc::UnknownOutPort: return "UnknownOutPort";
    case Errc::DuplicateEntry: return "DuplicateEntry";
    case Errc::UnsupportedLayer: return "UnsupportedLayer";
    case Errc::AlreadyBootstrapped: return "AlreadyBootstrapped";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::UnknownTunnel: return "UnknownTunnel";
    case Errc::UnknownUe: return "UnknownUe";
    case Errc::ProtocolViolation: return "ProtocolViolation";
    case Errc::InvalidSession: return "InvalidSession";
    case Errc::NotIdle: return "NotIdle";
    case Errc::BadFrame: return "BadFrame";
    case Errc::ScriptError: return "ScriptError";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

Bytes to_bytes(std::string_view text) { return Bytes(text.begin(), text.end()); }

std::string to_text(ByteView data) { return std::string(data.begin(), data.end()); }

std::string to_hex(ByteView data) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (auto b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

std::uint64_t fnv1a64(ByteView data, std::uint64_t seed) {
    std::uint64_t hash = seed;
    for (auto b : data) {
        hash ^= b;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string Ipv4Addr::to_string() const {
    return std::to_string(value_ >> 24) + '.' + std::to_string((value_ >> 16) & 0xff) + '.' +
           std::to_string((value_ >> 8) & 0xff) + '.' + std::to_string(value_ & 0xff);
}

std::optional<Ipv4Addr> Ipv4Addr::parse(std::string_view text) {
    std::uint32_t value = 0;
    const char *p = text.data();
    const char *end = text.data() + text.size();
    for (int i = 0; i < 4; ++i) {
        if (i > 0) {
            if (p == end || *p != '.') {
                return std::nullopt;
            }
            ++p;
        }
        unsigned octet = 0;
        auto [next, ec] = std::from_chars(p, end, octet);
        if (ec != std::errc{} || next == p || next - p > 3 || octet > 255) {
            return std::nullopt;
        }
        value = (value << 8) | octet;
        p = next;
    }
    if (p != end) {
        return std::nullopt;
    }
    return Ipv4Addr(value);
}

} // namespace open5g
