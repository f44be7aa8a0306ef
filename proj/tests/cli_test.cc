// Copyright 2026 The Authors.
//
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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" STREAMLINE_CLI_PATH "' " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("streamline_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return (dir_ / name).string();
  }

  std::string small_config() {
    return write("config.json", R"({
      "seeds": [0, 1], "methods": ["streamline", "random"], "budget": 6,
      "learner": {"epochs": 15},
      "stream": {"dim": 8, "common_initial_size": 20, "rounds": 3, "episode_size": 25,
                 "eval_per_slice": 10}
    })");
  }

  fs::path dir_;
};

TEST_F(Cli, RunWritesOutputs) {
  const auto r = cli("run --config " + small_config() + " --out " + (dir_ / "out").string());
  ASSERT_EQ(r.code, 0) << r.out;
  for (const char* f : {"metrics.csv", "selections.jsonl", "summary.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
  }
}

TEST_F(Cli, RerunIsByteIdentical) {
  const auto cfg = small_config();
  ASSERT_EQ(cli("run --config " + cfg + " --out " + (dir_ / "a").string()).code, 0);
  ASSERT_EQ(cli("run --workers 2 --config " + cfg + " --out " + (dir_ / "b").string()).code, 0);
  EXPECT_EQ(slurp(dir_ / "a" / "metrics.csv"), slurp(dir_ / "b" / "metrics.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "summary.json"), slurp(dir_ / "b" / "summary.json"));
}

TEST_F(Cli, ConfigErrorsExitTwo) {
  const auto bad = write("bad.json", R"({"seed": 0, "method": "random", "rho": 1.5})");
  const auto r = cli("run --config " + bad + " --out " + (dir_ / "out").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("rho"), std::string::npos);
  EXPECT_EQ(cli("validate --config " + bad).code, 2);
  EXPECT_EQ(cli("validate --config " + (dir_ / "missing.json").string()).code, 2);
  EXPECT_EQ(cli("run").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
}

TEST_F(Cli, ValidateAcceptsGoodConfig) {
  const auto r = cli("validate --config " + small_config());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("2 methods"), std::string::npos);
}

TEST_F(Cli, RuntimeErrorsExitThree) {
  write("blocker", "x");
  EXPECT_EQ(cli("run --config " + small_config() + " --out " + (dir_ / "blocker" / "out").string()).code, 3);
  EXPECT_EQ(cli("efficiency --metrics " + (dir_ / "none.csv").string() + " --target 0.5").code, 3);
  const auto junk = write("junk.csv", "method,seed\nx,1\n");
  EXPECT_EQ(cli("efficiency --metrics " + junk + " --target 0.5").code, 3);
}

TEST_F(Cli, Efficiency) {
  const auto csv = write("m.csv",
                         "method,seed,round,labels_total,full_metric,rare_metric,identified_slice,"
                         "true_slice,granted_b,gamma\n"
                         "random,0,0,100,0.3,0.3,-1,0,100,0\n"
                         "random,0,1,200,0.6,0.6,-1,0,100,0\n"
                         "fast,0,0,100,0.6,0.6,0,0,100,0\n"
                         "fast,0,1,200,0.7,0.7,0,0,100,0\n"
                         "slow,0,0,100,0.1,0.1,0,0,100,0\n"
                         "slow,0,1,200,0.2,0.2,0,0,100,0\n");
  const auto r = cli("efficiency --metrics " + csv + " --target 0.6 --metric rare");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, "method,labeling_efficiency\nrandom,1\nfast,2\nslow,undefined\n");
  EXPECT_EQ(cli("efficiency --metrics " + csv + " --target 0.6 --metric median").code, 2);
}

TEST_F(Cli, SeedEnvironmentOverride) {
  const auto cfg = small_config();
  ASSERT_EQ(cli("run --config " + cfg + " --out " + (dir_ / "o").string(), "STREAMLINE_SEED=9").code, 0);
  const auto csv = slurp(dir_ / "o" / "metrics.csv");
  EXPECT_NE(csv.find("\nstreamline,9,0,"), std::string::npos);
  EXPECT_EQ(csv.find("\nstreamline,0,"), std::string::npos);
  EXPECT_EQ(cli("validate --config " + cfg, "STREAMLINE_SEED=nine").code, 2);
}

}  // namespace
