// Copyright 2026 The inkspan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "inkspan/cli.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace inkspan::cli {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "inkspan");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string InstancePath(const std::string& name) { return std::string(INKSPAN_INSTANCE_DIR) + "/" + name; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("inkspan_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  void Write(const std::string& name, const std::string& text) const { std::ofstream(Path(name)) << text; }
  static std::string Read(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), {}};
  }
  fs::path dir_;
};

TEST_F(CliTest, SolveWorkedExample) {
  CliRun r = Cli({"solve", "--alg", "exact", "--input", InstancePath("e1.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["value"], 8);

  r = Cli({"solve", "--alg", "constant", "--input", InstancePath("e1.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["value"], 6);
  EXPECT_DOUBLE_EQ(Json::parse(r.out)["claimed_factor"].get<double>(), 1.0 / 9.0);

  r = Cli({"solve", "--alg", "ptas", "--eps", "0.5", "--input", InstancePath("e1.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["value"], 8);
  EXPECT_EQ(Json::parse(r.out)["schedule"]["insertion_time"]["i2"], 2);
}

TEST_F(CliTest, SolveLpModes) {
  CliRun r = Cli({"solve", "--alg", "lp-strong", "--input", InstancePath("gap22.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["value"], 12);
  r = Cli({"solve", "--alg", "lp-weak", "--input", InstancePath("gap22.json")});
  EXPECT_GE(Json::parse(r.out)["value"].get<double>(), 12.0);
}

TEST_F(CliTest, SolveWritesOutFile) {
  const CliRun r = Cli({"solve", "--alg", "exact", "--input", InstancePath("e2.json"), "--out", Path("r.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(Json::parse(Read(Path("r.json")))["value"], 13);
}

TEST_F(CliTest, GenGapMatchesGenerator) {
  const CliRun r = Cli({"gen", "gap", "--k", "2", "--m", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out), Json::parse(Read(InstancePath("gap22.json"))));
}

TEST_F(CliTest, GenRandomIsReproducible) {
  const CliRun a = Cli({"gen", "random", "--n", "5", "--t", "3", "--seed", "7", "--out", Path("a.json")});
  const CliRun b = Cli({"gen", "random", "--n", "5", "--t", "3", "--seed", "7", "--out", Path("b.json")});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(Read(Path("a.json")), Read(Path("b.json")));
  EXPECT_EQ(read_instance_file(Path("a.json")).item_count(), 5u);
}

TEST_F(CliTest, GenThreePartition) {
  Write("yes.txt", "10 11 11\n10 10 12\n");
  CliRun r = Cli({"gen", "3partition", "--file", Path("yes.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["capacities"], Json::parse("[32, 64]"));
  EXPECT_TRUE(r.err.empty());

  Write("wide.txt", "1 1 30");
  r = Cli({"gen", "3partition", "--file", Path("wide.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);

  Write("odd.txt", "1 1 1 1 1 2");
  r = Cli({"gen", "3partition", "--file", Path("odd.txt")});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("NotDivisible"), std::string::npos);
}

TEST_F(CliTest, Evaluate) {
  Write("s.json", R"({"insertion_time": {"i1": 1, "i2": 1}})");
  CliRun r = Cli({"evaluate", "--input", InstancePath("e1.json"), "--schedule", Path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["value"], 10);
  EXPECT_EQ(j["feasible"], false);
  EXPECT_EQ(j["violations"][0]["period"], 1);

  Write("bad.json", R"({"insertion_time": {"zz": 1}})");
  r = Cli({"evaluate", "--input", InstancePath("e1.json"), "--schedule", Path("bad.json")});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("UnknownItem"), std::string::npos);
}

TEST_F(CliTest, CompareWorkedExamples) {
  const CliRun r = Cli({"compare", std::string(INKSPAN_INSTANCE_DIR)});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, kCompareHeader);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(line.back(), '0') << line;
  }
  EXPECT_EQ(rows, 6);
  const CliRun again = Cli({"compare", std::string(INKSPAN_INSTANCE_DIR), "--threads", "3"});
  EXPECT_EQ(again.out, r.out);
}

TEST_F(CliTest, CompareRandomCorpusPtas) {
  for (int seed = 1; seed <= 5; ++seed) {
    ASSERT_EQ(Cli({"gen", "random", "--n", "6", "--t", "3", "--seed", std::to_string(seed), "--out",
                   Path("r" + std::to_string(seed) + ".json")})
                  .code,
              0);
  }
  const CliRun r = Cli({"compare", dir_.string(), "--alg", "ptas", "--eps", "0.3", "--timing"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    ASSERT_EQ(cols.size(), 8u) << line;
    EXPECT_GE(std::stod(cols[4]), 0.49);
    EXPECT_FALSE(cols[6].empty());
  }
}

TEST_F(CliTest, CompareEmptyCorpus) {
  const CliRun r = Cli({"compare", dir_.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, std::string(kCompareHeader) + "\n");
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"solve", "--alg", "greedy", "--input", InstancePath("e1.json")}).code, kExitUsage);
  EXPECT_EQ(Cli({"solve", "--alg", "exact", "--input", Path("missing.json")}).code, kExitUsage);
  EXPECT_EQ(Cli({"solve", "--alg", "ptas", "--eps", "1.5", "--input", InstancePath("e1.json")}).code, kExitUsage);

  ASSERT_EQ(Cli({"gen", "random", "--n", "30", "--t", "4", "--out", Path("big.json")}).code, 0);
  const CliRun big = Cli({"solve", "--alg", "exact", "--input", Path("big.json")});
  EXPECT_EQ(big.code, kExitLimit);
  EXPECT_NE(big.err.find("SizeLimit"), std::string::npos);

  ::setenv("INKSPAN_LP_BUDGET", "2", 1);
  const CliRun budget = Cli({"solve", "--alg", "ptas", "--input", InstancePath("e1.json")});
  ::unsetenv("INKSPAN_LP_BUDGET");
  EXPECT_EQ(budget.code, kExitLimit);
  EXPECT_NE(budget.err.find("BudgetExceeded"), std::string::npos);
  EXPECT_NE(budget.err.find("budget 2"), std::string::npos);

  Write("discounted.json", R"({"T": 2, "items": [{"id": "a", "value": 1, "weight": 1}],
                               "capacities": [1, 1], "discounts": [1, 0.5]})");
  const CliRun iik = Cli({"solve", "--alg", "ptas", "--input", Path("discounted.json")});
  EXPECT_EQ(iik.code, kExitFailure);
  EXPECT_NE(iik.err.find("NotTimeInvariant"), std::string::npos);
}

TEST_F(CliTest, BinaryExitStatus) {
  const std::string bin = INKSPAN_CLI_PATH;
  int status = std::system((bin + " solve --alg exact --input " + InstancePath("e1.json") + " > /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(status), 0);
  status = std::system((bin + " solve --bogus 2> /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(status), kExitUsage);
}

}  // namespace
}  // namespace inkspan::cli
