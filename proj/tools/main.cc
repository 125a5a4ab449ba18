// Copyright 2026 The locclab Authors
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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commands.h"
#include "locclab/error.h"

namespace {

using locclab::Error;
using locclab::ErrorCode;
using namespace locclab::cli;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw locclab::ParseError(ErrorCode::kSyntax, 0, 0, "cannot read file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void add_run_flags(CLI::App *cmd, RunOptions &options) {
    cmd->add_option("--samples", options.samples, "Haar-random bases per party")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", options.seed, "Seed for every stochastic step");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"locclab: LOCC property-inference protocols and holism evidence"};
    app.require_subcommand(1);

    RunOptions options;
    bool machine_only = false;
    app.add_flag("--machine-only", machine_only, "Print only the KEY=VALUE section");

    std::string demo_name;
    auto *demo = app.add_subcommand("demo", "Run a built-in demonstration: bell-parity, domino, classical");
    demo->add_option("name", demo_name)->required();
    add_run_flags(demo, options);
    demo->add_flag("--machine-only", machine_only, "Print only the KEY=VALUE section");

    std::string ensemble_path;
    auto *verdict = app.add_subcommand("verdict", "Holism verdict for an ensemble file");
    verdict->add_option("ensemble", ensemble_path)->required();
    add_run_flags(verdict, options);
    verdict->add_flag("--machine-only", machine_only, "Print only the KEY=VALUE section");

    std::string protocol_path;
    auto *disc = app.add_subcommand("discriminate", "Score a protocol file against an ensemble file");
    disc->add_option("ensemble", ensemble_path)->required();
    disc->add_option("protocol", protocol_path)->required();
    disc->add_flag("--machine-only", machine_only, "Print only the KEY=VALUE section");

    std::string party = "A";
    auto *scan = app.add_subcommand("scan", "Spoiling scan of local rank-1 measurements");
    scan->add_option("ensemble", ensemble_path)->required();
    scan->add_option("--party", party, "Measuring party")->check(CLI::IsMember({"A", "B"}));
    add_run_flags(scan, options);
    scan->add_flag("--machine-only", machine_only, "Print only the KEY=VALUE section");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        locclab::Report report("");
        if (*demo) {
            if (demo_name == "bell-parity") {
                report = demo_bell_parity(options);
            } else if (demo_name == "domino") {
                report = demo_domino(options);
            } else if (demo_name == "classical") {
                report = demo_classical();
            } else {
                std::cerr << "error: unknown demo '" << demo_name << "' (expected bell-parity, domino, classical)\n";
                return kExitParse;
            }
        } else if (*verdict) {
            report = verdict_command(ensemble_path, read_file(ensemble_path), options);
        } else if (*disc) {
            report = discriminate_command(ensemble_path, read_file(ensemble_path), protocol_path,
                                          read_file(protocol_path));
        } else if (*scan) {
            report = scan_command(ensemble_path, read_file(ensemble_path),
                                  party == "A" ? locclab::Party::kA : locclab::Party::kB, options);
        }
        std::cout << report.render(machine_only);
        return kExitOk;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception &e) {
        std::cerr << "error: E_INTERNAL: " << e.what() << '\n';
        return kExitInternal;
    }
}
