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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "open5g/error.hpp"

namespace open5g {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

Bytes to_bytes(std::string_view text);
std::string to_text(ByteView data);
std::string to_hex(ByteView data);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(ByteView data, std::uint64_t seed = 0xcbf29ce484222325ULL);

/// IPv4 address held in host order.
class Ipv4Addr {
public:
    constexpr Ipv4Addr() = default;
    constexpr explicit Ipv4Addr(std::uint32_t value) : value_(value) {}
    constexpr Ipv4Addr(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d)
        : value_((std::uint32_t{a} << 24) | (std::uint32_t{b} << 16) | (std::uint32_t{c} << 8) | d) {}

    constexpr std::uint32_t value() const { return value_; }
    std::string to_string() const;
    static std::optional<Ipv4Addr> parse(std::string_view text);

    friend constexpr auto operator<=>(const Ipv4Addr &, const Ipv4Addr &) = default;

private:
    std::uint32_t value_ = 0;
};

/// Appends big-endian fields to a growing buffer.
class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v) {
        buf_.push_back(static_cast<std::uint8_t>(v >> 8));
        buf_.push_back(static_cast<std::uint8_t>(v));
    }
    void u32(std::uint32_t v) {
        u16(static_cast<std::uint16_t>(v >> 16));
        u16(static_cast<std::uint16_t>(v));
    }
    void ipv4(Ipv4Addr addr) { u32(addr.value()); }
    void raw(ByteView data) { buf_.insert(buf_.end(), data.begin(), data.end()); }

    /// Overwrites a previously written u16 at `offset`.
    void patch_u16(std::size_t offset, std::uint16_t v) {
        buf_.at(offset) = static_cast<std::uint8_t>(v >> 8);
        buf_.at(offset + 1) = static_cast<std::uint8_t>(v);
    }

    std::size_t size() const { return buf_.size(); }
    Bytes take() && { return std::move(buf_); }

private:
    Bytes buf_;
};

/// Bounds-checked big-endian reader. Running past the end throws an Error
/// carrying `underflow`, so each parsing context picks its own failure code.
class ByteReader {
public:
    ByteReader(ByteView data, Errc underflow) : data_(data), underflow_(underflow) {}

    std::uint8_t u8() {
        need(1);
        return data_[pos_++];
    }
    std::uint16_t u16() {
        need(2);
        auto v = static_cast<std::uint16_t>((data_[pos_] << 8) | data_[pos_ + 1]);
        pos_ += 2;
        return v;
    }
    std::uint32_t u32() {
        std::uint32_t hi = u16();
        return (hi << 16) | u16();
    }
    Ipv4Addr ipv4() { return Ipv4Addr(u32()); }
    ByteView take(std::size_t n) {
        need(n);
        auto out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }
    ByteView rest() { return take(remaining()); }

    std::size_t remaining() const { return data_.size() - pos_; }
    bool empty() const { return remaining() == 0; }

private:
    void need(std::size_t n) const {
        if (remaining() < n) {
            throw Error(underflow_);
        }
    }

    ByteView data_;
    std::size_t pos_ = 0;
    Errc underflow_;
};

} // namespace open5g
