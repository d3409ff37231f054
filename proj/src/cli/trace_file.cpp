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

#include "open5g/cli/trace_file.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace open5g::cli {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string &what) {
    throw Error(Errc::ParseError, "ParseError: line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_u64(std::string_view text, int base, std::size_t line, std::string_view what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, base);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        fail(line, "bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return v;
}

} // namespace

std::string format_trace(const sim::EventTrace &trace) {
    std::string out(kTraceHeader);
    out += '\n';
    char digest[17];
    for (const auto &r : trace.records) {
        std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(r.digest));
        out += std::to_string(r.step_no) + ' ' + std::to_string(r.time) + ' ' + r.src + ' ' + r.dst + ' ' +
               std::string(sim::to_string(r.channel)) + ' ' + r.kind + ' ' + digest + '\n';
    }
    return out;
}

sim::EventTrace parse_trace(std::string_view text) {
    sim::EventTrace trace;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string step, time, src, dst, channel, kind, digest, extra;
        if (!(fields >> step >> time >> src >> dst >> channel >> kind >> digest)) {
            fail(line_no, "expected 7 fields: step time src dst channel kind digest");
        }
        if (fields >> extra) {
            fail(line_no, "unexpected field '" + extra + "'");
        }
        sim::TraceRecord r;
        r.step_no = parse_u64(step, 10, line_no, "step");
        r.time = parse_u64(time, 10, line_no, "time");
        r.src = src;
        r.dst = dst;
        auto ch = sim::parse_channel(channel);
        if (!ch) {
            fail(line_no, "unknown channel '" + channel + "'");
        }
        r.channel = *ch;
        r.kind = kind;
        if (digest.size() != 16) {
            fail(line_no, "digest must be 16 hex digits");
        }
        r.digest = parse_u64(digest, 16, line_no, "digest");
        if (!trace.records.empty() && r.step_no <= trace.records.back().step_no) {
            fail(line_no, "step numbers must increase");
        }
        trace.records.push_back(std::move(r));
    }
    return trace;
}

sim::EventTrace load_trace(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::ParseError, "ParseError: cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_trace(ss.str());
}

void save_trace(const std::string &path, const sim::EventTrace &trace) {
    std::ofstream out(path, std::ios::binary);
    out << format_trace(trace);
    if (!out) {
        throw Error(Errc::ScriptError, "cannot write " + path);
    }
}

} // namespace open5g::cli
