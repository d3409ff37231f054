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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace open5g {

/// Error codes shared by every layer of the simulator. Values below 0x100 may
/// travel on the wire inside an Open5G ERROR message.
enum class Errc : std::uint16_t {
    // decoder
    Truncated = 1,
    BadVersion = 2,
    UnknownType = 3,
    MalformedTlv = 4,
    BadLength = 5,
    InvalidMessage = 6,
    BadGtpuFlags = 7,
    BadSigFlags = 8,
    // datapath
    DuplicatePort = 16,
    UnknownPort = 17,
    DuplicateBearer = 18,
    UnknownOutPort = 19,
    DuplicateEntry = 20,
    UnsupportedLayer = 21,
    // controller
    AlreadyBootstrapped = 0x100,
    UnknownNode,
    UnknownTunnel,
    UnknownUe,
    ProtocolViolation,
    InvalidSession,
    // simulator and tooling
    NotIdle = 0x200,
    BadFrame,
    ScriptError,
    BudgetExceeded,
    ParseError,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string &what) : std::runtime_error(what), code_(code) {}
    explicit Error(Errc code) : Error(code, std::string(to_string(code))) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace open5g
