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

#include "open5g/cli/commands.hpp"

#include <algorithm>
#include <sstream>

#include "open5g/cli/scenario_file.hpp"
#include "open5g/cli/trace_file.hpp"
#include "open5g/sim/simulator.hpp"

namespace open5g::cli {

namespace {

std::vector<const sim::TraceRecord *> filtered(const sim::EventTrace &trace, const std::set<sim::Channel> &channels) {
    std::vector<const sim::TraceRecord *> out;
    for (const auto &r : trace.records) {
        if (channels.empty() || channels.count(r.channel) != 0) {
            out.push_back(&r);
        }
    }
    return out;
}

std::string show(const sim::TraceRecord *r) {
    if (r == nullptr) {
        return "<end of trace>";
    }
    return r->src + " -> " + r->dst + " " + std::string(sim::to_string(r->channel)) + " " + r->kind;
}

int error_exit(const Error &e, std::ostream &err) {
    err << e.what() << '\n';
    return e.code() == Errc::ParseError ? kExitParseError : kExitSimError;
}

} // namespace

VerifyResult verify(const sim::EventTrace &trace, const sim::EventTrace &golden, const std::set<sim::Channel> &channels) {
    auto got = filtered(trace, channels);
    auto want = filtered(golden, channels);
    auto n = std::max(got.size(), want.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto *g = i < got.size() ? got[i] : nullptr;
        const auto *w = i < want.size() ? want[i] : nullptr;
        if (g != nullptr && w != nullptr && g->src == w->src && g->dst == w->dst && g->channel == w->channel &&
            g->kind == w->kind) {
            continue;
        }
        VerifyResult res;
        res.equal = false;
        res.divergence_step = w != nullptr ? w->step_no : g->step_no;
        res.message = "divergence at step " + std::to_string(*res.divergence_step) + ": expected " + show(w) +
                      ", got " + show(g);
        return res;
    }
    return {};
}

std::set<sim::Channel> parse_channel_list(std::string_view text) {
    std::set<sim::Channel> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        if (item.empty()) {
            continue;
        }
        auto ch = sim::parse_channel(item);
        if (!ch) {
            throw Error(Errc::ParseError, "ParseError: unknown channel '" + item + "'");
        }
        out.insert(*ch);
    }
    return out;
}

std::vector<std::string> table_dump(const std::string &scenario_path, const std::string &node, std::uint64_t at_step) {
    auto sc = load_scenario(scenario_path);
    if (!sc.topology.node_index(node)) {
        throw Error(Errc::UnknownNode, "UnknownNode: " + node);
    }
    sim::Simulator simulator(sc.topology, sc.script, sc.settings);
    simulator.run(at_step);
    return simulator.node(node).datapath().render_table();
}

int cmd_run(const std::string &scenario_path, const std::string &out_path, std::ostream &out, std::ostream &err) {
    try {
        auto sc = load_scenario(scenario_path);
        sim::Simulator simulator(sc.topology, sc.script, sc.settings);
        simulator.run();
        save_trace(out_path, simulator.trace());
        out << "wrote " << simulator.trace().records.size() << " records to " << out_path << '\n';
        return kExitOk;
    } catch (const Error &e) {
        return error_exit(e, err);
    }
}

int cmd_verify(const std::string &trace_path, const std::string &golden_path, const std::string &channels,
               std::ostream &out, std::ostream &err) {
    try {
        auto filter = parse_channel_list(channels);
        auto res = verify(load_trace(trace_path), load_trace(golden_path), filter);
        if (!res.equal) {
            out << res.message << '\n';
            return kExitMismatch;
        }
        out << "ok\n";
        return kExitOk;
    } catch (const Error &e) {
        return error_exit(e, err);
    }
}

int cmd_table_dump(const std::string &scenario_path, const std::string &node, std::uint64_t at_step,
                   std::ostream &out, std::ostream &err) {
    try {
        for (const auto &row : table_dump(scenario_path, node, at_step)) {
            out << row << '\n';
        }
        return kExitOk;
    } catch (const Error &e) {
        if (e.code() == Errc::UnknownNode) {
            err << e.what() << '\n';
            return kExitParseError;
        }
        return error_exit(e, err);
    }
}

} // namespace open5g::cli
