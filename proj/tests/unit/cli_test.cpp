// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "brute_force.hpp"
#include "cli.hpp"

using flashcard::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> column(const std::string& csv, std::size_t index) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::string> values;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string field;
    for (std::size_t i = 0; i <= index; ++i) std::getline(fields, field, ',');
    values.push_back(field);
  }
  return values;
}

std::string joined(const std::vector<oracle::u64>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("flashcard_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, SimulateSlow) {
  const auto r = run({"simulate", "--schedule", "slow", "--steps", "30"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("t,card,k\n1,1,1\n2,2,1\n"));
  EXPECT_EQ(joined(column(r.out, 1)), joined(oracle::kSlowViewing30));
  EXPECT_EQ(joined(column(r.out, 2)), joined(oracle::kSlowCounting30));
}

TEST(Cli, SimulateConstantOne) {
  const auto r = run({"simulate", "--schedule", "constant:1", "--steps", "5"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(joined(column(r.out, 1)), "1,1,1,1,1");
}

TEST(Cli, SimulateIsDeterministic) {
  const auto a = run({"simulate", "--schedule", "uniform", "--seed", "7", "--steps", "100"});
  const auto b = run({"simulate", "--schedule", "uniform", "--seed", "7", "--steps", "100"});
  const auto c = run({"simulate", "--schedule", "uniform", "--seed", "8", "--steps", "100"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  const auto json = run({"simulate", "--schedule", R"({"kind":"uniform","seed":7})", "--steps", "100"});
  EXPECT_EQ(json.out, a.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"simulate"}).code, 2);
  EXPECT_EQ(run({"simulate", "--steps", "0"}).code, 2);
  EXPECT_EQ(run({"simulate", "--steps", "5", "--schedule", "bogus"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"simulate", "--schedule", "recap", "--cap", "100", "--steps", "1000"}).code, 3);
  EXPECT_EQ(run({"simulate", "--steps", "5", "--out", "/nonexistent-dir/x.csv"}).code, 4);
  EXPECT_EQ(run({"sequences", "--to-counting", "/nonexistent-dir/in.txt"}).code, 4);
  EXPECT_EQ(run({"decode-times", "--input", "0,2"}).code, 2);
  EXPECT_EQ(run({"check", "--suite", "general", "--schedule", "constant:3", "--budget", "10"}).code, 0);
  EXPECT_EQ(run({"check", "--suite", "cloud", "--interval", "5:2"}).code, 2);
  const auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("simulate"), std::string::npos);
}

TEST(Cli, CheckSuites) {
  const auto slow = run({"check", "--suite", "slow", "--n-max", "200"});
  EXPECT_EQ(slow.code, 0) << slow.out << slow.err;
  EXPECT_NE(slow.out.find("PASS"), std::string::npos);
  const auto several = run({"check", "--suite", "root2k,min-gap,variant-gap", "--k-max", "100", "--n-max", "20"});
  EXPECT_EQ(several.code, 0) << several.out;
  const auto general = run({"check", "--suite", "general", "--schedule", "affine:3:1", "--n-max", "50",
                            "--format", "csv"});
  EXPECT_EQ(general.code, 0);
  EXPECT_TRUE(general.out.starts_with("suite,check,range,evaluated,violations,witness\n"));
  const auto broken = run({"check", "--suite", "root2k", "--k-max", "200", "--offset", "-3"});
  EXPECT_EQ(broken.code, 1) << broken.out;
  EXPECT_NE(broken.out.find("VIOLATION"), std::string::npos);
}

TEST(Cli, ProbesNeverFail) {
  const auto r = run({"check", "--suite", "probes", "--n-range", "100:200", "--budget", "100000"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("probe T_1(n)/n^2"), std::string::npos);
  EXPECT_NE(r.out.find("c_10(t)=c_1(t)"), std::string::npos);
}

TEST(Cli, DecodeAndSnapshot) {
  EXPECT_EQ(run({"decode-times", "--input", "1"}).out, "t=1; deck=1\n");
  EXPECT_EQ(run({"decode-times", "--input", "11,6,9,4,10,10,9,8,0,11,11,11"}).out,
            "t=100; deck=4,10,7,11,5,6,8,9,12,1,2,3\n");
  const auto snap = run({"times", "--time", "100"});
  EXPECT_EQ(snap.out, "t=100\ndeck=4,10,7,11,5,6,8,9,12,1,2,3\ntimes=11,6,9,4,10,10,9,8,0,11,11,11\nsum=100\n");
}

TEST(Cli, SequencesAndConversions) {
  const auto dir = temp_dir();
  const auto path = dir / "viewing.txt";
  const auto v = run({"sequences", "--length", "30", "--out", path.string()});
  ASSERT_EQ(v.code, 0) << v.err;
  const auto c = run({"sequences", "--to-counting", path.string()});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out, run({"sequences", "--length", "30", "--kind", "counting"}).out);
  std::ofstream(dir / "counting.txt") << c.out;
  EXPECT_EQ(run({"sequences", "--to-viewing", (dir / "counting.txt").string()}).out, slurp(path));
  std::ofstream(dir / "bad.txt") << "2\n";
  EXPECT_EQ(run({"sequences", "--to-viewing", (dir / "bad.txt").string()}).code, 2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, Tableau) {
  EXPECT_EQ(run({"tableau", "--tmax", "6"}).out, "1,3,6\n2,4\n5\n");
  EXPECT_EQ(run({"tableau", "--tmax", "6", "--source", "viewing"}).out, "1,3,6\n2,4\n5\n");
  EXPECT_EQ(run({"tableau", "--tmax", "6", "--source", "counting"}).out, "1,2,5\n3,4\n6\n");
  EXPECT_EQ(run({"tableau", "--tmax", "6", "--source", "viewing", "--part", "insertion"}).out, "3,2,1\n2,1\n1\n");
}

TEST(Cli, CurveWritesFiles) {
  const auto dir = temp_dir();
  const auto csv = dir / "c.csv";
  const auto svg = dir / "c.svg";
  const auto r = run({"curve", "--interval", "100:2000", "--csv", csv.string(), "--svg", svg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto text = slurp(csv);
  EXPECT_TRUE(text.starts_with("n,k,T,x,y\n"));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 1901);
  EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, VariantsAndStats) {
  const auto r = run({"variants", "--family", "reversal", "--steps", "15"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(joined(column(r.out, 1)), joined(oracle::kReversalPrefix));
  EXPECT_EQ(run({"variants", "--family", "riffle", "--steps", "15"}).code, 2);
  EXPECT_EQ(run({"stats", "--steps", "2"}).out, "t,inv,des\n1,0,0\n2,1,1\n");
}

TEST(Cli, ConfigFile) {
  const auto dir = temp_dir();
  const auto config = dir / "run.json";
  std::ofstream(config) << R"({"schedule": {"kind": "constant", "c": 3}, "steps": 6})";
  const auto r = run({"simulate", "--config", config.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(joined(column(r.out, 1)), "1,2,3,1,2,3");
  const auto overridden = run({"simulate", "--config", config.string(), "--steps", "2"});
  EXPECT_EQ(joined(column(overridden.out, 1)), "1,2");
  std::ofstream(dir / "bad.json") << "[1,2]";
  EXPECT_EQ(run({"simulate", "--config", (dir / "bad.json").string()}).code, 2);
  std::ofstream(dir / "unknown.json") << R"({"colour": "red"})";
  EXPECT_EQ(run({"simulate", "--steps", "3", "--config", (dir / "unknown.json").string()}).code, 2);
  EXPECT_EQ(run({"simulate", "--config", (dir / "missing.json").string()}).code, 4);
  std::filesystem::remove_all(dir);
}
