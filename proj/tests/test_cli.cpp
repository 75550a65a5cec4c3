// Copyright 2026 The owcnot Authors
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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "owc/cli.hpp"

using namespace owc;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "owcnot");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Result &r) {
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(Cli, RunForcedZeroBranch) {
    auto r = invoke({"run", "--control", "1,0,0,0", "--target", "1,0,0,0", "--outcomes", "0000000000000", "--format",
                     "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json_of(r);
    EXPECT_EQ(j["schema"], "owcnot.run/1");
    EXPECT_TRUE(j["pass"].get<bool>());
    // Corrected output is |00> up to phase.
    auto amp = j["corrected_output"][0];
    EXPECT_NEAR(std::hypot(amp[0].get<double>(), amp[1].get<double>()), 1.0, 1e-12);
    EXPECT_EQ(j["outcome_order"], nlohmann::json({1, 2, 3, 4, 5, 6, 8, 9, 10, 11, 12, 13, 14}));
    EXPECT_TRUE(j["predicted_is_solution"].get<bool>());
}

TEST(Cli, RunSeededGivesOneOne) {
    auto r = invoke({"run", "--control", "0,0,1,0", "--target", "1,0,0,0", "--seed", "42", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto amp = json_of(r)["corrected_output"][3];
    EXPECT_NEAR(std::hypot(amp[0].get<double>(), amp[1].get<double>()), 1.0, 1e-12);
    EXPECT_EQ(json_of(r)["policy"]["seed"], 42);
}

TEST(Cli, RunRejectsShortBitString) {
    auto r = invoke({"run", "--outcomes", "00"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("expected 13 outcome bits"), std::string::npos);
    EXPECT_EQ(invoke({"run", "--outcomes", "000000000000x"}).code, 2);
}

TEST(Cli, AmplitudeNormalization) {
    EXPECT_EQ(invoke({"run", "--control", "1,0,1,0"}).code, 2);
    EXPECT_EQ(invoke({"run", "--control", "1,0"}).code, 2);
    EXPECT_EQ(invoke({"run", "--control", "a,0,0,0"}).code, 2);
    auto r = invoke({"run", "--control", "0.6,0,0,0.8000001"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("renormalized"), std::string::npos);
    auto exact = invoke({"run", "--control", "0.6,0,0,0.8"});
    EXPECT_EQ(exact.err, "");
}

TEST(Cli, RunIsByteIdenticalPerSeed) {
    auto a = invoke({"run", "--control", "0.6,0,0,0.8", "--seed", "9", "--format", "json"});
    auto b = invoke({"run", "--control", "0.6,0,0,0.8", "--seed", "9", "--format", "json"});
    EXPECT_EQ(a.out, b.out);
    auto ta = invoke({"run", "--seed", "9"});
    auto tb = invoke({"run", "--seed", "9"});
    EXPECT_EQ(ta.out, tb.out);
}

TEST(Cli, SeedFromEnvironment) {
    setenv("OWC_SEED", "42", 1);
    auto a = invoke({"run", "--control", "0,0,1,0", "--format", "json"});
    unsetenv("OWC_SEED");
    auto b = invoke({"run", "--control", "0,0,1,0", "--seed", "42", "--format", "json"});
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, AuditSingleClaim) {
    auto r = invoke({"audit", "--check", "eq26", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json_of(r);
    ASSERT_EQ(j["claims"].size(), 1u);
    EXPECT_EQ(j["claims"][0]["id"], "eq26");
    EXPECT_EQ(j["claims"][0]["verdict"], "confirmed");
}

TEST(Cli, AuditUnknownClaim) {
    auto r = invoke({"audit", "--check", "bogus"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("unknown claim id"), std::string::npos);
}

TEST(Cli, AuditBadDataDir) {
    EXPECT_EQ(invoke({"audit", "--sampled", "64", "--data-dir", "/nonexistent"}).code, 2);
}

TEST(Cli, AuditFullReportAndOutputFile) {
    auto path = std::filesystem::temp_directory_path() / "owcnot_audit_test.json";
    auto r = invoke({"audit", "--format", "json", "--output", path.string(), "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "");
    std::ifstream in(path);
    auto j = nlohmann::json::parse(in);
    EXPECT_GE(j["claims"].size(), 14u);
    EXPECT_EQ(j["seed"], 3);
    std::filesystem::remove(path);
}

TEST(Cli, TablesSubcluster) {
    auto r = invoke({"tables", "--subcluster", "4-7", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json_of(r)["row_count"], 4);
    auto t = invoke({"tables", "--subcluster", "4-7"});
    EXPECT_NE(t.out.find("sign|4|5|6|7\n"), std::string::npos);
}

TEST(Cli, TablesDiffGolden) {
    auto r = invoke({"tables", "--subcluster", "1-15", "--diff-golden", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json_of(r);
    EXPECT_EQ(j["row_count"], 128);
    EXPECT_EQ(j["diff"]["golden_row_count"], 128);
    EXPECT_EQ(j["diff"]["verdict"], "different");
    EXPECT_EQ(j["diff"]["only_in_golden"].size(), 4u);
    auto small = json_of(invoke({"tables", "--subcluster", "1-8", "--diff-golden", "--format", "json"}));
    EXPECT_NE(small["diff"]["verdict"], "different");
}

TEST(Cli, TablesUnknownSelector) {
    auto r = invoke({"tables", "--subcluster", "5-9"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("unknown subcluster"), std::string::npos);
}

TEST(Cli, StabilizersCnot15) {
    auto r = invoke({"stabilizers", "--graph", "cnot15"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 15);
    auto j = json_of(invoke({"stabilizers", "--graph", "cnot15", "--format", "json"}));
    EXPECT_LT(j["max_residual"].get<double>(), 1e-12);
    EXPECT_EQ(j["stabilizers"].size(), 15u);
}

TEST(Cli, StabilizersChain2FromDataDir) {
    auto r = invoke({"stabilizers", "--graph", "chain2.txt"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("K1 = +X1 Z2"), std::string::npos);
    EXPECT_NE(r.out.find("K2 = +Z1 X2"), std::string::npos);
}

TEST(Cli, StabilizersMalformedFile) {
    auto path = std::filesystem::temp_directory_path() / "owcnot_bad_graph.txt";
    std::ofstream(path) << "1 2\n2 banana\n";
    auto r = invoke({"stabilizers", "--graph", path.string()});
    EXPECT_EQ(r.code, 2);
    std::filesystem::remove(path);
    EXPECT_EQ(invoke({"stabilizers", "--graph", "/nonexistent/graph.txt"}).code, 2);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
    EXPECT_EQ(invoke({"run", "--format", "yaml"}).code, 2);
    EXPECT_EQ(invoke({"--help"}).code, 0);
}
