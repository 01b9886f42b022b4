// Copyright 2026 The pircodex Authors
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

// Runs the built binary and checks output and exit status.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" PIRCODEX_CLI_PATH "' " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

const std::string kSamples = PIRCODEX_SAMPLES_DIR;
const std::string kExample =
    "--code " + kSamples + "/nonmds532.code --lambda " + kSamples + "/nonmds532.lambda";

TEST(Cli, Capacity) {
  const CliRun r = run("capacity 5 3 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "5/8 (0.625)\n");
  const auto j = nlohmann::json::parse(run("--format json capacity 5 3 2").out);
  EXPECT_EQ(j["capacity"], "5/8");
  EXPECT_EQ(j["limit"], "2/5");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("capacity 5 3 2 --nope").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("no-such-command").status, 2);
  EXPECT_EQ(run("--format xml capacity 5 3 2").status, 2);
  EXPECT_EQ(run("simulate " + kExample + " --files 2 --stripes 8").status, 2);
  EXPECT_EQ(run("rate --code " + kSamples + "/missing.code --lambda x").status, 2);
  EXPECT_EQ(run("classify --construct mds --n 5 --k 3 --code " + kSamples + "/nonmds532.code")
                .status,
            2);
}

TEST(Cli, ClassifyAndSearch) {
  const CliRun mds = run("--format json classify --construct mds --n 5 --k 3 --field 'gf(5)'");
  EXPECT_EQ(mds.status, 0);
  const auto j = nlohmann::json::parse(mds.out);
  EXPECT_EQ(j["verdict"], "capacity_achieving");
  EXPECT_EQ(j["lambda"]["kappa"], 3);
  EXPECT_EQ(j["lambda"]["nu"], 5);

  const std::string ex = "--code " + kSamples + "/nonmds532.code";
  EXPECT_EQ(run("classify " + ex).status, 0);
  EXPECT_EQ(run("classify " + ex + " --certify").status, 1);
  const CliRun s = run("--format json search " + ex + " --kappa 3 --nu 5");
  EXPECT_EQ(s.status, 1);
  EXPECT_EQ(nlohmann::json::parse(s.out)["status"], "not_found");
  EXPECT_EQ(run("search " + ex + " --kappa 2 --nu 3").status, 0);
  EXPECT_EQ(run("search " + ex + " --kappa 6 --nu 10 --budget 3").status, 3);
  EXPECT_EQ(run("ghw --construct rm --r 2 --e 6 --ghw-budget 100").status, 3);
}

TEST(Cli, RateMatchesExample) {
  const CliRun r = run("--format json rate " + kExample + " --files 2");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rate"], "27/50");
  EXPECT_EQ(j["capacity"], "5/8");
  EXPECT_EQ(run("rate --code " + kSamples + "/nonmds532.code --lambda " + kSamples +
                "/nonmds532_invalid.lambda")
                .status,
            1);
}

TEST(Cli, SimulateIsDeterministic) {
  const std::string args = "--format json --seed 5 simulate " + kExample + " --files 2";
  const CliRun a = run(args);
  const CliRun b = run(args);
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["seed"], 5);
  ASSERT_EQ(j["sessions"].size(), 2u);
  for (const auto& s : j["sessions"]) {
    EXPECT_TRUE(s["recovered"].get<bool>());
    EXPECT_EQ(s["download"], 50);
  }
  const CliRun env = run("--format json simulate " + kExample + " --files 2", "PIRCODEX_SEED=5");
  EXPECT_EQ(env.out, a.out);
  EXPECT_NE(run("--format json --seed 6 simulate " + kExample + " --files 2").out, a.out);
}

TEST(Cli, AuditExitStatus) {
  const std::string args = "--seed 2 audit " + kExample + " --files 2 --trials 1000";
  EXPECT_EQ(run(args).status, 0);
  EXPECT_EQ(run(args + " --no-shuffle-for 2").status, 1);
  EXPECT_EQ(run(args + " --trials 10").status, 2);
}

TEST(Cli, ScanFormats) {
  const CliRun csv = run("--format csv scan --nmax 4");
  ASSERT_EQ(csv.status, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')),
            "n,k,generator,spot_check,weight_condition,failing_s,search,kappa,nu,agreement");
  const auto j = nlohmann::json::parse(run("--format json scan --nmax 4").out);
  EXPECT_EQ(j["disagreements"], 0);
  EXPECT_EQ(run("scan --nmax 9").status, 2);
}

TEST(Cli, HelpListsEverySubcommand) {
  const CliRun top = run("--help");
  EXPECT_EQ(top.status, 0);
  for (const char* sub :
       {"capacity", "rate", "ghw", "search", "classify", "scan", "simulate", "audit"}) {
    EXPECT_NE(top.out.find(sub), std::string::npos) << sub;
    const CliRun h = run(std::string(sub) + " --help");
    EXPECT_EQ(h.status, 0) << sub;
    EXPECT_NE(h.out.find("Usage:"), std::string::npos) << sub;
  }
}

}  // namespace
