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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "gtest/gtest.h"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string &args, const std::string &env = {}) {
    std::string cmd = env + (env.empty() ? "" : " ") + "'" LOCCLAB_CLI_PATH "' " + args + " 2>&1";
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return {-1, {}};
    }
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        out.append(buf, n);
    }
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string &name) {
    return std::string("'" LOCCLAB_DATA_DIR "/") + name + "'";
}

std::string write_temp(const std::string &name, const std::string &text) {
    auto path = std::filesystem::temp_directory_path() / ("locclab_cli_test_" + name);
    std::ofstream(path) << text;
    return "'" + path.string() + "'";
}

std::string value_of(const std::string &out, const std::string &key) {
    auto a = ("\n" + out).find("\n" + key + "=");
    if (a == std::string::npos) {
        return "<missing>";
    }
    auto start = a + key.size() + 1;
    return out.substr(start, out.find('\n', start) - start);
}

bool has_line(const std::string &out, const std::string &line) {
    return ("\n" + out).find("\n" + line + "\n") != std::string::npos;
}

}  // namespace

TEST(cli, demo_bell_parity) {
    auto r = run("demo bell-parity");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    EXPECT_TRUE(has_line(r.out, "SUCCESS_PROB=1.000000000000")) << r.out;
    EXPECT_TRUE(has_line(r.out, "VERDICT=no-holism-evidence")) << r.out;
    EXPECT_TRUE(has_line(r.out, "SEED=42")) << r.out;
    EXPECT_NE(r.out.find("[machine]"), std::string::npos);
}

TEST(cli, demo_domino) {
    auto r = run("demo domino --seed 42 --machine-only");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    EXPECT_TRUE(has_line(r.out, "VERDICT=holism-evidence")) << r.out;
    EXPECT_TRUE(has_line(r.out, "SPOIL_FRACTION=1.000000000000")) << r.out;
    EXPECT_TRUE(has_line(r.out, "GLOBAL_SUCCESS=1.000000000000")) << r.out;
    EXPECT_EQ(r.out.find("[machine]"), std::string::npos);
}

TEST(cli, demo_classical) {
    auto r = run("demo classical --machine-only");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    EXPECT_TRUE(has_line(r.out, "ALL_INFERABLE=true")) << r.out;
    EXPECT_TRUE(has_line(r.out, "PROPERTIES_CHECKED=64")) << r.out;
}

TEST(cli, unknown_demo) {
    EXPECT_EQ(run("demo teleport").exit_code, 2);
}

TEST(cli, usage_errors) {
    EXPECT_EQ(run("").exit_code, 2);
    EXPECT_EQ(run("verdict").exit_code, 2);
    EXPECT_EQ(run("demo domino --samples notanumber").exit_code, 2);
    EXPECT_EQ(run("--help").exit_code, 0);
}

TEST(cli, verdict_domino_matches_demo) {
    auto file = run("verdict " + data("domino.ens") + " --machine-only");
    ASSERT_EQ(file.exit_code, 0) << file.out;
    EXPECT_TRUE(has_line(file.out, "VERDICT=holism-evidence")) << file.out;
    auto demo = run("demo domino --machine-only");
    for (const char *key : {"VERDICT", "GLOBAL_SUCCESS", "BEST_PROTOCOL", "SPOIL_FRACTION_A", "SPOIL_FRACTION_B",
                            "SPOIL_FRACTION", "WITNESS_A", "WITNESS_B", "CAVEAT"}) {
        EXPECT_EQ(value_of(file.out, key), value_of(demo.out, key)) << key;
    }
    EXPECT_NEAR(std::stod(value_of(file.out, "BEST_LOCC_SUCCESS")), std::stod(value_of(demo.out, "BEST_LOCC_SUCCESS")),
                1e-9);
}

TEST(cli, verdict_bell2) {
    auto r = run("verdict " + data("bell2.ens") + " --samples 100 --machine-only");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    EXPECT_TRUE(has_line(r.out, "VERDICT=no-holism-evidence")) << r.out;
    EXPECT_TRUE(has_line(r.out, "BEST_PROTOCOL=bell-parity")) << r.out;
    for (const char *key : {"GLOBAL_SUCCESS=", "BEST_LOCC_SUCCESS=", "SPOIL_FRACTION=", "CAVEAT="}) {
        EXPECT_NE(r.out.find(key), std::string::npos) << key;
    }
}

TEST(cli, verdict_bell4) {
    auto r = run("verdict " + data("bell4.ens") + " --samples 100 --machine-only");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    EXPECT_TRUE(has_line(r.out, "VERDICT=holism-evidence")) << r.out;
}

TEST(cli, verdict_non_orthogonal) {
    auto r = run("verdict " + data("nonorthogonal.ens"));
    EXPECT_EQ(r.exit_code, 3) << r.out;
    EXPECT_NE(r.out.find("E_PRECOND"), std::string::npos) << r.out;
}

TEST(cli, parse_errors_exit_2) {
    auto dims = run("verdict " + write_temp("dims.ens", "DIMS 2 2\nSTATE a 1 (1,0) (0,0) (0,0)\n"));
    EXPECT_EQ(dims.exit_code, 2);
    EXPECT_NE(dims.out.find("E_DIMS"), std::string::npos) << dims.out;
    auto syntax = run("verdict " + write_temp("syntax.ens", "DIMS 2 2\nSTATE a 1 (1,0 (0,0) (0,0) (0,0)\n"));
    EXPECT_EQ(syntax.exit_code, 2);
    EXPECT_NE(syntax.out.find("E_SYNTAX"), std::string::npos) << syntax.out;
    EXPECT_NE(syntax.out.find("line 2,"), std::string::npos) << syntax.out;
    EXPECT_EQ(run("verdict /nonexistent/file.ens").exit_code, 2);
}

TEST(cli, discriminate_command) {
    auto r = run("discriminate " + data("bell2.ens") + " " + data("bell_parity.proto") + " --machine-only");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    EXPECT_TRUE(has_line(r.out, "SUCCESS_PROB=1.000000000000")) << r.out;
    EXPECT_TRUE(has_line(r.out, "PERFECT=true")) << r.out;

    auto four = run("discriminate " + data("bell4.ens") + " " + data("bell_parity.proto") + " --machine-only");
    ASSERT_EQ(four.exit_code, 0) << four.out;
    EXPECT_TRUE(has_line(four.out, "SUCCESS_PROB=0.500000000000")) << four.out;

    auto unknown = run("discriminate " + data("domino.ens") + " " + data("bell_parity.proto"));
    EXPECT_EQ(unknown.exit_code, 3) << unknown.out;
}

TEST(cli, scan_command) {
    auto r = run("scan " + data("domino.ens") + " --party B --samples 50 --machine-only");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    EXPECT_TRUE(has_line(r.out, "PARTY=B")) << r.out;
    EXPECT_TRUE(has_line(r.out, "SPOIL_FRACTION=1.000000000000")) << r.out;
    EXPECT_EQ(run("scan " + data("domino.ens") + " --party C").exit_code, 2);
}

TEST(cli, machine_section_is_byte_deterministic) {
    for (const std::string args : {"demo domino --machine-only --samples 200", "demo bell-parity --machine-only",
                                   "demo classical --machine-only"}) {
        auto a = run(args, "LOCCLAB_THREADS=1");
        auto b = run(args, "LOCCLAB_THREADS=4");
        auto c = run(args, "LOCCLAB_THREADS=0");
        ASSERT_EQ(a.exit_code, 0) << a.out;
        EXPECT_EQ(a.out, b.out) << args;
        EXPECT_EQ(a.out, c.out) << args;
    }
}

TEST(cli, seed_changes_scan_bases_not_verdict) {
    auto a = run("demo domino --machine-only --samples 100 --seed 1");
    auto b = run("demo domino --machine-only --samples 100 --seed 2");
    EXPECT_TRUE(has_line(a.out, "SEED=1"));
    EXPECT_TRUE(has_line(b.out, "SEED=2"));
    EXPECT_TRUE(has_line(a.out, "VERDICT=holism-evidence"));
    EXPECT_TRUE(has_line(b.out, "VERDICT=holism-evidence"));
}
