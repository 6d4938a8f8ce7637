#include <gtest/gtest.h>

#include <algorithm>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "imatch/fixtures.hpp"
#include "imatch/market_io.hpp"

namespace imatch::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("imatch_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string dir(const std::string& sub = "") const { return (dir_ / sub).string(); }

  fs::path dir_;
};

TEST_F(CliTest, DemoReproduces) {
  const auto r = invoke({"demo"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("blocking pairs: 0 (stable)"), std::string::npos);
  EXPECT_NE(r.out.find("(unstable)"), std::string::npos);
  EXPECT_NE(r.out.find("result: reproduced"), std::string::npos);
  EXPECT_EQ(invoke({"demo"}).out, r.out);
}

TEST_F(CliTest, DemoJson) {
  const auto r = invoke({"demo", "--json"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("\"reproduced\": true"), std::string::npos);
  EXPECT_NE(r.out.find("\"stable\": false"), std::string::npos);
}

TEST_F(CliTest, NoCommandIsUsageError) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST_F(CliTest, BadFlagsAreUsageErrors) {
  EXPECT_EQ(invoke({"sweep", "--k-min", "5", "--k-max", "2", "--out", dir()}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--reps", "0", "--out", dir()}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--threads", "zero", "--out", dir()}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--doctors", "1", "--out", dir()}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({"heatmap", "--l-min", "3", "--l-max", "1", "--out", dir()}).code, kExitUsage);
  EXPECT_EQ(invoke({"run", "--market", dir("missing.json")}).code, kExitUsage);
}

TEST_F(CliTest, UnwritableOutput) {
  std::ofstream(dir("blocker")) << "x";
  const auto r = invoke({"sweep", "--doctors", "6", "--hospitals", "5", "--reps", "1", "--k-max", "2",
                         "--l", "2", "--out", dir("blocker/sub")});
  EXPECT_EQ(r.code, kExitUnwritable);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, SingleRowSweep) {
  const auto r = invoke({"sweep", "--doctors", "20", "--hospitals", "15", "--l", "4", "--reps", "1",
                         "--k-min", "3", "--k-max", "3", "--out", dir()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto sweep = slurp(dir("sweep.csv"));
  EXPECT_EQ(std::ranges::count(sweep, '\n'), 2);
  EXPECT_EQ(sweep.rfind("k,replication,", 0), 0u);
  EXPECT_EQ(std::ranges::count(slurp(dir("sweep_agg.csv")), '\n'), 2);
  EXPECT_NE(r.out.find("sweep.csv (1 rows)"), std::string::npos);
  EXPECT_NE(r.out.find("sweep_agg.csv (1 rows)"), std::string::npos);
}

TEST_F(CliTest, ConfigFileFlagsWin) {
  std::ofstream(dir("exp.toml")) << "doctors = 14\nhospitals = 12\nl = 3\nk-min = 1\nk-max = 2\nreps = 4\n";
  const auto r = invoke({"sweep", "--config", dir("exp.toml"), "--reps", "2", "--out", dir()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("sweep.csv (4 rows)"), std::string::npos);
  std::ofstream(dir("bad.toml")) << "dcotors = 14\n";
  EXPECT_EQ(invoke({"sweep", "--config", dir("bad.toml"), "--out", dir()}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--config", dir("absent.toml")}).code, kExitUsage);
}

TEST_F(CliTest, CompareIdealHeatmapOracleSample) {
  const std::vector<std::string> market{"--doctors", "12", "--hospitals", "10", "--l", "3", "--reps", "2"};
  auto with = [&](std::vector<std::string> args) {
    args.insert(args.begin() + 1, market.begin(), market.end());
    args.insert(args.end(), {"--out", dir()});
    return invoke(args);
  };
  EXPECT_EQ(with({"compare", "--k-cap", "2"}).code, kExitOk);
  EXPECT_EQ(slurp(dir("compare.csv")).rfind("replication,doctors_prefer_capped,", 0), 0u);
  EXPECT_EQ(slurp(dir("hist.csv")).rfind("arm,interviews,doctor_count,replication\n", 0), 0u);
  EXPECT_EQ(with({"ideal", "--k-cap", "2"}).code, kExitOk);
  EXPECT_TRUE(fs::exists(dir("ideal.csv")));
  const auto heat = invoke({"heatmap", "--doctors", "12", "--hospitals", "10", "--reps", "1", "--l-min",
                            "1", "--l-max", "2", "--k-min", "1", "--k-max", "3", "--out", dir()});
  EXPECT_EQ(heat.code, kExitOk);
  EXPECT_EQ(std::ranges::count(slurp(dir("heatmap.csv")), '\n'), 7);
  const auto oracle = invoke({"oracle", "--grid", "4", "--out", dir()});
  EXPECT_EQ(oracle.code, kExitOk);
  EXPECT_NE(oracle.out.find("exact form mismatches: 0;"), std::string::npos);
  EXPECT_EQ(invoke({"sample", "--doctors", "5", "--hospitals", "4", "--out", dir()}).code, kExitOk);
  EXPECT_EQ(load_market(dir("market.json")).n_doctors(), 5);
  EXPECT_EQ(std::ranges::count(slurp(dir("latent.csv")), '\n'), 10);
}

TEST_F(CliTest, RunOnMarketFile) {
  std::ofstream(dir("m.json")) << market_to_json(fixtures::hoarding_market());
  const auto r = invoke({"run", "--market", dir("m.json"), "--hospital-caps", "1", "1", "2", "2",
                         "--doctor-caps", "2", "2", "1", "1", "--trace", dir("trace.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("\"match_rate\": 0.75"), std::string::npos);
  EXPECT_EQ(slurp(dir("trace.csv")).rfind("round,proposer_side,proposer,proposee,outcome\n", 0), 0u);
  EXPECT_EQ(invoke({"run", "--market", dir("m.json"), "--l", "2", "--k", "2"}).code, kExitOk);
  EXPECT_EQ(invoke({"run", "--market", dir("m.json"), "--hospital-caps", "1", "1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"run", "--market", dir("m.json"), "--hospital-caps", "1", "1", "--doctor-caps", "1",
                    "1", "1", "1"})
                .code,
            kExitUsage);
}

TEST_F(CliTest, OutputIndependentOfThreads) {
  const std::vector<std::string> base{"sweep", "--doctors", "25", "--hospitals", "20", "--l", "4",
                                      "--k-max", "6", "--reps", "5"};
  auto at = [&](const std::string& threads, const std::string& sub) {
    auto args = base;
    args.insert(args.end(), {"--threads", threads, "--out", dir(sub)});
    EXPECT_EQ(invoke(args).code, kExitOk);
    return slurp(dir(sub + "/sweep.csv")) + slurp(dir(sub + "/sweep_agg.csv"));
  };
  const auto one = at("1", "a");
  EXPECT_EQ(at("4", "b"), one);
  EXPECT_EQ(at("auto", "c"), one);
}

}  // namespace
}  // namespace imatch::cli
