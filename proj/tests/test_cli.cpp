#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "symsq/census.hpp"

using namespace symsq;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> fields(const std::string& row) {
  std::vector<std::string> v;
  std::istringstream in(row);
  for (std::string f; std::getline(in, f, ',');) v.push_back(f);
  if (!row.empty() && row.back() == ',') v.emplace_back();
  return v;
}

}  // namespace

TEST(Cli, CountSplitOneRow) {
  const Result r = run({"count", "--class", "split", "--bound", "1e5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "set_id,B,param,count,normalized,elapsed_s,partitions");
  const auto f = fields(ls[1]);
  ASSERT_EQ(f.size(), 7u);
  EXPECT_EQ(f[0], "SPLIT");
  EXPECT_EQ(f[1], "100000");
  EXPECT_EQ(f[3], std::to_string(count_split_nondiagonal(1e5).count));
}

TEST(Cli, ScanRatiosMatchLibrary) {
  const Result r = run({"scan", "--class", "nonsplit", "--height", "proxy", "--bounds", "1e3:1e5:5", "--normalize",
                        "blogb", "--deterministic"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 6u);
  const auto grid = cli::geometric_grid(1e3, 1e5, 5);
  for (size_t i = 0; i < grid.size(); ++i) {
    const auto f = fields(ls[i + 1]);
    const u64 want = count_nonsplit(grid[i], HeightMode::Proxy).count;
    EXPECT_EQ(f[3], std::to_string(want));
    EXPECT_NEAR(std::stod(f[4]), static_cast<double>(want) / (grid[i] * std::log(grid[i])), 1e-9);
    EXPECT_EQ(f[5], "0");
  }
}

TEST(Cli, ScanTenRowGrid) {
  const Result r = run({"scan", "--class", "nonsplit", "--height", "proxy", "--bounds", "1e3:1e6:10", "--normalize",
                        "blogb"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 11u);
  for (size_t i = 1; i < ls.size(); ++i) {
    const double ratio = std::stod(fields(ls[i])[4]);
    EXPECT_GT(ratio, 0.5);
    EXPECT_LT(ratio, 2.0);
  }
}

TEST(Cli, GeometricGridEnds) {
  const auto g = cli::geometric_grid(1e3, 1e6, 7);
  ASSERT_EQ(g.size(), 7u);
  EXPECT_EQ(g.front(), 1e3);
  EXPECT_EQ(g.back(), 1e6);
  EXPECT_NEAR(g[2], 1e4, 1e-6);
  EXPECT_THROW(cli::geometric_grid(10, 1, 3), std::invalid_argument);
  EXPECT_THROW(cli::geometric_grid(1, 10, 1), std::invalid_argument);
}

TEST(Cli, ByteIdenticalAcrossWorkerCounts) {
  for (const char* cls : {"diag", "split", "nonsplit", "s"}) {
    std::vector<std::string> base = {"scan", "--class", cls, "--bounds", "50:400:4", "--normalize", "b2",
                                     "--deterministic"};
    auto with = [&](const char* w, const char* p) {
      auto a = base;
      a.insert(a.end(), {"--workers", w, "--partitions", p});
      return run(a);
    };
    const Result one = with("1", "1");
    ASSERT_EQ(one.code, 0) << one.err;
    const Result four = with("4", "4");
    const Result sixteen = with("2", "16");
    // the partition column differs by design; everything else must match
    auto strip = [](const std::string& s) {
      std::string o;
      for (const auto& l : lines(s)) o += l.substr(0, l.rfind(',')) + "\n";
      return o;
    };
    EXPECT_EQ(strip(one.out), strip(four.out)) << cls;
    EXPECT_EQ(strip(one.out), strip(sixteen.out)) << cls;
    EXPECT_EQ(one.out, with("1", "1").out) << cls;
  }
}

TEST(Cli, WorkerEnvironmentDefault) {
  setenv("SYMSQ_WORKERS", "3", 1);
  EXPECT_EQ(default_workers(), 3);
  const Result r = run({"count", "--class", "split", "--bound", "100"});
  EXPECT_EQ(fields(lines(r.out)[1])[6], "3");
  unsetenv("SYMSQ_WORKERS");
}

TEST(Cli, JsonMirrorsCsv) {
  const Result r = run({"count", "--class", "s_x", "--param", "-26", "--bound", "200", "--format", "json",
                        "--normalize", "b2", "--deterministic"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::ordered_json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["set_id"], "S_X");
  EXPECT_EQ(j[0]["param"], -26);
  EXPECT_EQ(j[0]["count"], 16);
  EXPECT_DOUBLE_EQ(j[0]["normalized"].get<double>(), 16.0 / 40000);
  EXPECT_EQ(j[0]["elapsed_s"], 0.0);
  std::vector<std::string> keys;
  for (auto it = j[0].begin(); it != j[0].end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"set_id", "B", "param", "count", "normalized", "elapsed_s", "partitions"}));
}

TEST(Cli, CsvQuoting) {
  EXPECT_EQ(cli::csv_field("plain"), "plain");
  EXPECT_EQ(cli::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(cli::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  const Result r = run({"verify", "--suite", "partitions", "--bound", "50"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, VerifyLemmaLowerPasses) {
  const Result r = run({"verify", "--suite", "lemma-lower", "--bound", "500"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, InjectedFaultExitsOneWithWitness) {
  const Result r = run({"verify", "--suite", "injected-fault"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("injected fault"), std::string::npos);
}

TEST(Cli, RealViolationReportsWitness) {
  const Result r = run({"verify", "--suite", "lemma-upper", "--bound", "100"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("image"), std::string::npos);
  EXPECT_EQ(run({"verify", "--suite", "lemma-upper", "--bound", "100", "--scale", "4"}).code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"count", "--class", "bogus", "--bound", "10"}).code, 2);
  EXPECT_EQ(run({"count", "--class", "split"}).code, 2);
  EXPECT_EQ(run({"count", "--class", "s_x", "--bound", "10"}).code, 2);
  EXPECT_EQ(run({"count", "--class", "s_x", "--param", "4", "--bound", "10"}).code, 2);
  EXPECT_EQ(run({"count", "--class", "split", "--bound", "10", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"count", "--class", "split", "--bound", "10", "--workers", "0"}).code, 2);
  EXPECT_EQ(run({"scan", "--class", "split", "--bounds", "100:10:3"}).code, 2);
  EXPECT_EQ(run({"scan", "--class", "split", "--bounds", "10:100:1"}).code, 2);
  EXPECT_EQ(run({"scan", "--class", "split", "--bounds", "10:100"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "lemma-lower", "--variant", "nope"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  const Result h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("verify"), std::string::npos);
}

TEST(Cli, DumpRoundTrips) {
  const Result r = run({"dump", "--class", "nonsplit", "--bound", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls.size(), count_nonsplit(12, HeightMode::Exact).count);
  for (const auto& l : ls) EXPECT_EQ(serialize(parse_point(l)), l);
  const Result d = run({"dump", "--class", "diag", "--bound", "2"});
  EXPECT_EQ(lines(d.out).size(), 12u);
  EXPECT_EQ(run({"dump", "--class", "s", "--bound", "5"}).code, 2);
}

TEST(Cli, AllSuitesRegistered) {
  const std::vector<std::string> want = {"cnf",         "erdos-turan",    "euler-product", "injected-fault",
                                         "lemma-lower", "lemma-upper",    "partitions",    "polya-vinogradov",
                                         "sx-identity", "tauber",         "tx-envelope"};
  EXPECT_EQ(cli::suite_names(), want);
  for (const char* s : {"sx-identity", "tx-envelope", "cnf", "erdos-turan"})
    EXPECT_EQ(run({"verify", "--suite", s, "--trials", "200"}).code, 0) << s;
}
