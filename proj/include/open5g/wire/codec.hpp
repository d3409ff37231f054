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

#include <cstddef>
#include <optional>
#include <vector>

#include "open5g/bytes.hpp"
#include "open5g/wire/message.hpp"

namespace open5g::wire {

/// Throws Error(InvalidMessage) if `msg` breaks a structural invariant.
void validate(const Message &msg);

/// Big-endian encoding. The header length field always equals the result size.
Bytes encode(const Message &msg);

/// Total decoder: any input yields a Message or throws an Error whose code is
/// one of Truncated, BadVersion, UnknownType, BadLength, MalformedTlv or
/// InvalidMessage.
Message decode(ByteView data);

/// Splits a controller-link byte stream into whole messages using the header
/// length field. Stops at the first framing error and reports it.
struct StreamSplit {
    std::vector<ByteView> messages;
    std::optional<Errc> framing_error;
    ByteView remainder;
};
StreamSplit split_stream(ByteView data);

} // namespace open5g::wire
