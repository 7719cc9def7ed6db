#include "slitflow/family_io.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using slitflow::BigInt;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SLITFLOW_BINARY) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
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

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("slitflow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string out(const std::string& sub) const { return "-o " + (dir_ / sub).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenerateSeedOnly) {
  const auto r = run("generate -s K=0 " + out("g"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto f = slitflow::contfrac::load_family((dir_ / "g" / "family.txt").string());
  EXPECT_EQ(f.family.tori(), 3u);
  EXPECT_EQ(f.family.depth(), 1u);
  EXPECT_NE(r.out.find("seed a_1 = 1: ok"), std::string::npos);
}

TEST_F(CliTest, FamilyFileRoundTrips) {
  ASSERT_EQ(run("generate -s K=5 " + out("g")).code, 0);
  const std::string text = slurp(dir_ / "g" / "family.txt");
  EXPECT_EQ(slitflow::contfrac::family_to_string(slitflow::contfrac::family_from_string(text)), text);
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  for (const char* sub : {"a", "b"}) {
    ASSERT_EQ(run("generate -s K=6 " + out(sub)).code, 0);
    const std::string fam = (dir_ / sub / "family.txt").string();
    run("limit-report -f " + fam + " " + out(sub));
    ASSERT_EQ(run("trace -f " + fam + " -s 'curves=T 0 1/1;B 1' -s 'times=range(0,4,5)' " + out(sub)).code, 0);
  }
  for (const char* file : {"family.txt", "audit.txt", "trace.csv", "ratio.csv", "sweep.csv", "decay.csv",
                           "summary.json", "ratio_gap.dat"}) {
    EXPECT_EQ(slurp(dir_ / "a" / file), slurp(dir_ / "b" / file)) << file;
    EXPECT_FALSE(slurp(dir_ / "a" / file).empty()) << file;
  }
}

TEST_F(CliTest, EmptyCurveListGivesHeaderOnly) {
  ASSERT_EQ(run("generate -s K=2 " + out("g")).code, 0);
  const auto r = run("trace -f " + (dir_ / "g" / "family.txt").string() + " " + out("t"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(slurp(dir_ / "t" / "trace.csv"), "curve,t,flat,modF,ext,hyp,width,twist_bound,reliable,±\n");
}

TEST_F(CliTest, BoundaryColumnIsSlitLength) {
  ASSERT_EQ(run("generate -s K=4 -s s0=0.02 " + out("g")).code, 0);
  ASSERT_EQ(run("trace -f " + (dir_ / "g" / "family.txt").string() +
                " -s 'curves=B 0' -s 'times=0,1.5,3' " + out("t"))
                .code,
            0);
  const auto rows = read_csv(dir_ / "t" / "trace.csv");
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double t = std::stod(rows[k][1]);
    EXPECT_NEAR(std::stod(rows[k][2]), 2 * 0.02 * std::exp(-t), 1e-15);
  }
}

TEST_F(CliTest, SummaryJsonMatchesCsv) {
  ASSERT_EQ(run("generate -s K=6 " + out("g")).code, 0);
  run("limit-report -f " + (dir_ / "g" / "family.txt").string() + " " + out("g"));
  const auto csv = read_csv(dir_ / "g" / "ratio.csv");
  const auto json = nlohmann::json::parse(slurp(dir_ / "g" / "summary.json"));
  ASSERT_EQ(json["ratio"].size() + 1, csv.size());
  for (std::size_t k = 0; k < json["ratio"].size(); ++k) {
    const auto& row = json["ratio"][k];
    EXPECT_EQ(row["n"].get<unsigned>(), std::stoul(csv[k + 1][0]));
    const double from_csv = std::stod(csv[k + 1][6]);
    EXPECT_NEAR(row["gap_lhs_rhs"].get<double>(), from_csv, 1e-12 * std::max(1.0, std::fabs(from_csv)));
    EXPECT_EQ(row["reliable"].get<bool>(), csv[k + 1][9] == "1");
  }
  EXPECT_EQ(json["mode"], "scaled(2,1)");
  EXPECT_TRUE(json["heuristic"].get<bool>());
}

TEST_F(CliTest, PlotDataIsMonotoneInX) {
  ASSERT_EQ(run("generate -s K=6 " + out("g")).code, 0);
  run("limit-report -f " + (dir_ / "g" / "family.txt").string() + " " + out("g"));
  for (const char* file : {"ratio_gap.dat", "sweep_distance.dat", "decay_ratio.dat"}) {
    std::istringstream in(slurp(dir_ / "g" / file));
    double x, y, prev = -1e300;
    std::size_t count = 0;
    while (in >> x >> y) {
      EXPECT_GT(x, prev) << file;
      prev = x;
      ++count;
    }
    EXPECT_EQ(count, 6u) << file;
  }
}

TEST_F(CliTest, CorruptedFamilyFailsVerification) {
  ASSERT_EQ(run("generate -s K=3 " + out("g")).code, 0);
  const fs::path fam = dir_ / "g" / "family.txt";
  auto f = slitflow::contfrac::load_family(fam.string());
  std::string text = slurp(fam);
  const std::string needle = "\n0 3 " + f.family.torus(0).a(3).str() + "\n";
  const auto at = text.find(needle);
  ASSERT_NE(at, std::string::npos);
  text.replace(at, needle.size(), "\n0 3 " + BigInt(f.family.torus(0).a(3) + 1).str() + "\n");
  std::ofstream(fam, std::ios::binary) << text;
  const auto r = run("verify -f " + fam.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL condition (iv)"), std::string::npos) << r.out;
}

TEST_F(CliTest, BudgetOverflowSavesPartialFamily) {
  const auto r = run("generate -s K=12 -s bit_budget=4096 " + out("g"));
  EXPECT_EQ(r.code, 2) << r.out;
  const auto f = slitflow::contfrac::load_family((dir_ / "g" / "family.txt").string());
  ASSERT_TRUE(f.failed_level.has_value());
  EXPECT_EQ(f.family.levels() + 1, *f.failed_level);
}

TEST_F(CliTest, InputErrorsExitThree) {
  EXPECT_EQ(run("generate -s s0=0.7 " + out("g")).code, 3);
  EXPECT_EQ(run("generate -s mode=strict -s K=3 " + out("g")).code, 3);
  EXPECT_EQ(run("generate -s nonsense=1 " + out("g")).code, 3);
  EXPECT_EQ(run("trace -f " + (dir_ / "missing.txt").string() + " " + out("g")).code, 3);
  EXPECT_EQ(run("").code, 3);
}

TEST_F(CliTest, ConfigFileAndOverridePrecedence) {
  const fs::path cfg = dir_ / "run.cfg";
  std::ofstream(cfg) << "# test\nd = 1\nK = 1\n";
  ASSERT_EQ(run("-c " + cfg.string() + " -s K=2 generate " + out("g")).code, 0);
  const auto f = slitflow::contfrac::load_family((dir_ / "g" / "family.txt").string());
  EXPECT_EQ(f.family.d, 1u);
  EXPECT_EQ(f.family.levels(), 2u);
}
