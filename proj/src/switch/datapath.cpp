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

#include "open5g/switch/datapath.hpp"

#include "open5g/error.hpp"

namespace open5g::sw {

void Datapath::apply_port_mod(const wire::PortMod &body) {
    if (auto removed = ports_.apply(body)) {
        table_.remove_referencing(*removed);
    }
}

void Datapath::apply_flow_mod(const wire::FlowMod &body) {
    switch (body.command) {
    case wire::FlowCommand::Add:
        if (ports_.find(body.action.out_port) == nullptr) {
            throw Error(Errc::UnknownOutPort, "UnknownOutPort: port-" + std::to_string(body.action.out_port));
        }
        table_.add(body.priority, body.match, body.action);
        break;
    case wire::FlowCommand::Delete:
        table_.remove_matching(body.match);
        break;
    }
}

std::vector<std::string> Datapath::render_table() const {
    std::vector<std::string> rows;
    rows.reserve(table_.size());
    for (const auto &entry : table_.entries()) {
        std::string row = "prio=" + std::to_string(entry.priority) + ' ' + describe(entry.match) + " -> OUTPUT ";
        if (const auto *port = ports_.find(entry.action.out_port)) {
            row += describe(*port);
        } else {
            row += "port-" + std::to_string(entry.action.out_port) + " (missing)";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace open5g::sw
