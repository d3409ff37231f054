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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "open5g/cli/commands.hpp"

int main(int argc, char **argv) {
    using namespace open5g::cli;

    CLI::App app{"Open5G RAN simulator"};
    app.require_subcommand(1);

    std::string scenario, out_path, trace, golden, channels, node;
    std::uint64_t at_step = 0;

    auto *run = app.add_subcommand("run", "run a scenario and write its trace");
    run->add_option("scenario", scenario, "scenario file")->required();
    run->add_option("-o,--output", out_path, "trace file to write")->required();

    auto *verify = app.add_subcommand("verify", "compare a trace with a golden sequence");
    verify->add_option("trace", trace, "trace file")->required();
    verify->add_option("--golden", golden, "golden trace")->required();
    verify->add_option("--channels", channels, "comma-separated channels to compare, e.g. srb0,srb1,ngap");

    auto *table = app.add_subcommand("table", "print a node's flow table at a given step");
    table->add_option("scenario", scenario, "scenario file")->required();
    table->add_option("--node", node, "node name")->required();
    table->add_option("--at", at_step, "trace step")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        auto rc = app.exit(e);
        return rc == 0 ? 0 : kExitParseError;
    }

    if (*run) {
        return cmd_run(scenario, out_path, std::cout, std::cerr);
    }
    if (*verify) {
        return cmd_verify(trace, golden, channels, std::cout, std::cerr);
    }
    return cmd_table_dump(scenario, node, at_step, std::cout, std::cerr);
}
