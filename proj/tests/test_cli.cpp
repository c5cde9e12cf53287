#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "mcps/instance_io.hpp"
#include "mcps/report.hpp"

namespace {

namespace fs = std::filesystem;
using namespace mcps;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) { return detail::read_file(p); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mcps_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

std::size_t count_files(const fs::path& dir) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.is_regular_file();
  return n;
}

TEST_F(CliTest, GenWritesRequestedCount) {
  auto r = cli({"gen", "--cars", "10", "--count", "50", "--seed", "1", "--out", path("a")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_files(dir_ / "a"), 50u);
  for (const auto& e : fs::directory_iterator(dir_ / "a")) EXPECT_EQ(load_instance(e.path()).size(), 10u);

  r = cli({"gen", "--cars", "10", "--count", "0", "--out", path("z")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("generated 0 instances"), std::string::npos);
  EXPECT_TRUE(!fs::exists(dir_ / "z") || count_files(dir_ / "z") == 0);
}

TEST_F(CliTest, GenIsDeterministic) {
  ASSERT_EQ(cli({"gen", "--cars", "30", "--count", "3", "--seed", "7", "--out", path("a")}).code, 0);
  ASSERT_EQ(cli({"gen", "--cars", "30", "--count", "3", "--seed", "7", "--out", path("b")}).code, 0);
  for (const auto& e : fs::directory_iterator(dir_ / "a")) {
    EXPECT_EQ(slurp(e.path()), slurp(dir_ / "b" / e.path().filename()));
  }
}

TEST_F(CliTest, SolveGreedyAndExitCodes) {
  save_instance(ProblemInstance("abab", {0, 1, 0, 1}, {1, 1}), path("abab.json"));
  auto r = cli({"solve", path("abab.json"), "--solver", "greedy"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("switches: 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("coloring: BBWW\n"), std::string::npos);
  EXPECT_NE(r.out.find("valid: true"), std::string::npos);

  save_instance(generate_synthetic(60, 3, QuotaPolicy::Balanced, 1), path("big.json"));
  EXPECT_EQ(cli({"solve", path("big.json"), "--solver", "exact"}).code, 3);
  EXPECT_EQ(cli({"solve", path("missing.json")}).code, 2);
  EXPECT_EQ(cli({"solve", path("abab.json"), "--solver", "qpu"}).code, 2);
  EXPECT_EQ(cli({"bogus"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);

  detail::write_file(path("broken.json"), "{\"name\":\"x\",\"word\":[0,0],\"quotas\":{\"0\":5}}");
  r = cli({"solve", path("broken.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("quotas[0]"), std::string::npos);
}

TEST_F(CliTest, SolveAnnealingReportsDefaults) {
  auto inst = generate_synthetic(30, 6, QuotaPolicy::UniformRandom, 2);
  save_instance(inst, path("i.json"));
  auto r = cli({"solve", path("i.json"), "--solver", "sa", "--no-timing"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("sa_sweeps: 300\n"), std::string::npos);
  EXPECT_NE(r.out.find("sa_samples: 600\n"), std::string::npos);
  EXPECT_EQ(r.out.find("wall_time_ms"), std::string::npos);
  EXPECT_EQ(cli({"solve", path("i.json"), "--solver", "sa", "--no-timing"}).out, r.out);
}

TEST_F(CliTest, EncodeWritesModel) {
  save_instance(ProblemInstance("ab", {0, 1}, {1, 0}), path("ab.json"));
  auto r = cli({"encode", path("ab.json"), "--lambda", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "{\"n_vars\":2,\"offset\":0,\"linear\":{\"0\":-2,\"1\":2},\"quadratic\":{\"0,1\":-1},"
                   "\"positions\":[0,1]}\n");
  r = cli({"encode", path("ab.json"), "--condition", "--format", "qubo", "--out", path("m.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "m.json"));
  EXPECT_EQ(cli({"encode", path("ab.json"), "--lambda", "-1"}).code, 2);
}

TEST_F(CliTest, PartitionSyntheticStream) {
  auto r = cli({"partition", "--chunk", "3000", "--out", path("p")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("34 partitions"), std::string::npos);
}

TEST_F(CliTest, BenchIsDeterministicAndOrdered) {
  ASSERT_EQ(cli({"gen", "--cars", "10", "--count", "5", "--seed", "3", "--out", path("inst")}).code, 0);
  auto r = cli({"bench", "--instances", path("inst"), "--solvers", "random,greedy,sa,exact", "--seed", "4",
                "--out", path("r1")});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(cli({"bench", "--instances", path("inst"), "--solvers", "random,greedy,sa,exact", "--seed", "4",
                 "--out", path("r2")})
                .code,
            0);
  const std::string csv = slurp(dir_ / "r1" / "report.csv");
  EXPECT_EQ(csv, slurp(dir_ / "r2" / "report.csv"));
  EXPECT_EQ(slurp(dir_ / "r1" / "plot.json"), slurp(dir_ / "r2" / "plot.json"));
  EXPECT_TRUE(fs::exists(dir_ / "r1" / "report.json"));

  const auto rows = parse_csv(csv);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[3].solver, "exact");
  for (const auto& row : rows) {
    EXPECT_EQ(row.instances, 5u);
    EXPECT_LE(rows[3].median_switches, row.median_switches);
    EXPECT_FALSE(row.median_wall_time_ms);
  }

  EXPECT_EQ(cli({"bench", "--instances", path("nothing*.json"), "--out", path("r3")}).code, 2);
  EXPECT_EQ(cli({"bench", "--instances", path("inst"), "--solvers", "", "--out", path("r3")}).code, 2);
}

TEST_F(CliTest, BenchGlobAndTiming) {
  ASSERT_EQ(cli({"gen", "--cars", "10", "--count", "3", "--out", path("inst")}).code, 0);
  auto r = cli({"bench", "--instances", path("inst") + "/*.json", "--solvers", "greedy", "--timing", "--out",
                path("r")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(slurp(dir_ / "r" / "report.csv"));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].instances, 3u);
  EXPECT_TRUE(rows[0].median_wall_time_ms);
}

TEST(CliHelpers, WildcardMatch) {
  EXPECT_TRUE(cli::wildcard_match("*.json", "a.json"));
  EXPECT_TRUE(cli::wildcard_match("mcps_N?_i*", "mcps_N1_i22"));
  EXPECT_FALSE(cli::wildcard_match("*.json", "a.csv"));
  EXPECT_EQ(cli::split_list("a,b,,c"), (std::vector<std::string>{"a", "b", "c"}));
}

}  // namespace
