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

#include <string>
#include <string_view>

#include "open5g/sim/topology.hpp"

namespace open5g::cli {

/// Everything a scenario file describes.
struct Scenario {
    sim::Topology topology;
    sim::Script script;
    sim::Settings settings;

    bool operator==(const Scenario &) const = default;
};

/// YAML scenario with `settings`, `topology` and `script` sections. Unknown
/// keys and bad values throw ParseError naming the offending line.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string &path);

/// Canonical YAML; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario &scenario);

} // namespace open5g::cli
