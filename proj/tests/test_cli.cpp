// Copyright 2026 The hlc-verify Authors
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

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "hlc/cli.hpp"
#include "hlc/error.hpp"
#include "hlc/numeric.hpp"

namespace hlc {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hlc");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Numeric, Parsing) {
  EXPECT_EQ(parse_u64("39_708_229_123"), 39'708'229'123u);
  EXPECT_EQ(parse_u64("1.7e9"), 1'700'000'000u);
  EXPECT_EQ(parse_u64("1e6"), 1'000'000u);
  EXPECT_THROW(parse_u64("1.5"), DomainError);
  EXPECT_THROW(parse_u64("-3"), DomainError);
  EXPECT_THROW(parse_u64(""), DomainError);
  EXPECT_THROW(parse_u64("18446744073709551616"), DomainError);
  EXPECT_EQ(to_string(parse_wide("1_000_000_000_000_000_000_000_000_000_000")),
            "1000000000000000000000000000000");
  EXPECT_EQ(parse_real("2.5"), 2.5L);
  EXPECT_EQ(isqrt(99), 9u);
  EXPECT_EQ(isqrt(UINT64_MAX), 4'294'967'295u);
  bool overflow = false;
  EXPECT_EQ(ceil_to_u64(2.1L, &overflow), 3u);
  EXPECT_FALSE(overflow);
  ceil_to_u64(1e30L, &overflow);
  EXPECT_TRUE(overflow);
}

TEST(Cli, ScalarCommands) {
  auto r = run_cli({"nth-prime", "9679"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "101081\n");
  EXPECT_EQ(run_cli({"pi", "1_000_000"}).out, "78498\n");
  EXPECT_EQ(run_cli({"primes", "1", "10"}).out, "2\n3\n5\n7\n");
  r = run_cli({"--format", "jsonl", "pi", "100"});
  EXPECT_EQ(r.out, "{\"x\":100,\"pi\":25}\n");
  r = run_cli({"pi", "100", "--format", "csv"});
  EXPECT_EQ(r.out, "x,pi\n100,25\n");
  EXPECT_EQ(run_cli({"bounds", "li", "2"}).out.substr(0, 14), "1.045163780117");
}

TEST(Cli, SegalScan) {
  auto r = run_cli({"segal", "scan", "--from", "3", "--to", "3", "--rule", "full"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["checked"], 1);
  EXPECT_TRUE(j["counterexamples"].empty());
  r = run_cli({"segal", "scan", "--from", "3", "--to", "9679"});
  EXPECT_EQ(nlohmann::json::parse(r.out)["verified_prime"], 101081);
  EXPECT_EQ(run_cli({"segal", "scan", "--from", "100", "--to", "200", "--rule", "panaitopol"}).code, 1);
}

TEST(Cli, SegalShardIndexSlices) {
  std::uint64_t total = 0;
  for (int i = 0; i < 3; ++i) {
    const auto r = run_cli({"--shards", "3", "--shard-index", std::to_string(i), "segal", "scan", "--from", "3",
                            "--to", "2000"});
    ASSERT_EQ(r.code, 0);
    total += nlohmann::json::parse(r.out)["checked"].get<std::uint64_t>();
  }
  std::uint64_t want = 0;
  for (std::uint64_t k = 3; k <= 2000; ++k) want += (k - 1) / 2;
  EXPECT_EQ(total, want);
  EXPECT_EQ(run_cli({"--shards", "2", "--shard-index", "2", "pi", "10"}).code, 1);
}

TEST(Cli, CheckpointResume) {
  const auto path = (std::filesystem::temp_directory_path() / "hlc_cli_resume.jsonl").string();
  std::filesystem::remove(path);
  const std::vector<std::string> base{"segal", "scan", "--from", "9680", "--to", "40000", "--rule", "panaitopol",
                                      "--checkpoint", path, "--checkpoint-every", "5000"};
  const auto straight = run_cli({"segal", "scan", "--from", "9680", "--to", "40000", "--rule", "panaitopol",
                                 "--checkpoint-every", "5000"});
  auto interrupted = base;
  interrupted.insert(interrupted.end(), {"--stop-after", "2"});
  EXPECT_EQ(run_cli(interrupted).code, 0);
  const auto resumed = run_cli(base);
  EXPECT_EQ(resumed.code, 0);
  EXPECT_EQ(resumed.out, straight.out);
  // Rerunning a finished checkpoint is idempotent.
  EXPECT_EQ(run_cli(base).out, straight.out);
  std::filesystem::remove(path);
}

TEST(Cli, Audit) {
  auto r = run_cli({"bounds", "audit", "dusart_lower", "--from", "5393", "--to", "1e6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "spec_id,x,pi_x,bound_x,direction,violated\n");
  r = run_cli({"bounds", "audit", "dusart_lower", "--from", "5393", "--to", "6000", "--all-points"});
  EXPECT_EQ(r.code, 0);
  EXPECT_GT(std::count(r.out.begin(), r.out.end(), '\n'), 50);
  r = run_cli({"bounds", "audit", "dusart_lower", "--from", "100", "--to", "1000"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("valid_from"), std::string::npos);
  EXPECT_EQ(run_cli({"bounds", "audit", "nope", "--to", "1000"}).code, 1);
}

TEST(Cli, Region) {
  auto r = run_cli({"region", "check", "1000000", "600"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["guarantees"][0]["source"], "THM_1_1");
  EXPECT_TRUE(j["guarantees"][0]["satisfied"].get<bool>());
  EXPECT_EQ(j["guarantees"].back()["source"], "DIRECT");
  r = run_cli({"region", "x0-table"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 16);
}

TEST(Cli, RhoStar) {
  auto r = run_cli({"rho-star", "10", "--exact"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "m,value,exact,witness_shift,pi_m,gap");
  EXPECT_EQ(run_cli({"rho-star", "21", "--exact"}).code, 1);
  EXPECT_EQ(run_cli({"--format", "plain", "rho-star", "4", "--exact"}).out, "2\n");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"pi"}).code, 1);
  EXPECT_EQ(run_cli({"pi", "abc"}).code, 1);
  EXPECT_EQ(run_cli({"--format", "xml", "pi", "10"}).code, 1);
  EXPECT_EQ(run_cli({"--budget", "1000", "pi", "10000"}).code, 1);
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("segal"), std::string::npos);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"--shards", "4", "bounds", "audit", "rh_band", "--from", "5639", "--to",
                                      "200000", "--all-points"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

}  // namespace
}  // namespace hlc
