#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "gch/sparse.hpp"

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(GCH_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream s(text);
  for (std::string l; std::getline(s, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST(CliDims, ThreeDimensions) {
  const CliRun r = run("dims --d 3");
  ASSERT_EQ(r.code, 0);
  for (const char* l : {"k=0 1", "k=1 9", "k=2 18", "k=3 10", "total 38", "n=1 38", "n=2 722"})
    EXPECT_TRUE(has_line(r.out, l)) << l;
}

TEST(CliDims, OneDimensionAndJson) {
  const CliRun r = run("dims --d 1 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["components"], nlohmann::json::array({1, 1}));
  EXPECT_EQ(j["total"], 2);
  EXPECT_EQ(j["quotient"].size(), 4u);
}

TEST(CliDims, RejectsZeroDimension) { EXPECT_EQ(run("dims --d 0").code, 2); }

TEST(CliVerify, AllSuitesPass) {
  const CliRun r = run("verify --suite all --seed 7 --trials 50");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(r.out.find("FAIL") == std::string::npos);
  EXPECT_TRUE(r.out.find("result: PASS") != std::string::npos);
}

TEST(CliVerify, SameSeedSameBytes) {
  const CliRun a = run("verify --suite shuffle --seed 7"), b = run("verify --suite shuffle --seed 7");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const CliRun j1 = run("verify --suite ginfty --seed 3 --trials 20 --format json"),
            j2 = run("verify --suite ginfty --seed 3 --trials 20 --format json");
  EXPECT_EQ(j1.out, j2.out);
}

TEST(CliVerify, JsonReport) {
  const CliRun r = run("verify --suite genv --seed 11 --trials 10 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["suite"], "genv");
  EXPECT_EQ(j["seed"], 11);
  EXPECT_EQ(j["trials"], 10);
  EXPECT_TRUE(j["pass"].get<bool>());
  ASSERT_FALSE(j["results"].empty());
  for (const auto& e : j["results"]) {
    EXPECT_EQ(e["instances"], 10);
    EXPECT_EQ(e["failures"], 0);
    EXPECT_TRUE(e["counterexample"].is_null());
  }
}

TEST(CliVerify, CorruptedBracketFailsWithCounterexample) {
  const CliRun r = run("verify --suite corrupted --seed 7");
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.find("FAIL corrupted/bracket Jacobi") != std::string::npos) << r.out;
  EXPECT_TRUE(r.out.find("first counterexample: ") != std::string::npos);
}

TEST(CliVerify, UsageErrors) {
  EXPECT_EQ(run("verify --suite nope").code, 2);
  EXPECT_EQ(run("verify --trials 0").code, 2);
  EXPECT_EQ(run("verify --format matrixmarket").code, 2);
  EXPECT_EQ(run("verify --bogus 1").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(CliCocycle, ThreeDimensions) {
  const CliRun r = run("cocycle");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"], "1");
  EXPECT_TRUE(j["cocycle"].get<bool>());
  EXPECT_FALSE(j["coboundary"].get<bool>());
  EXPECT_EQ(j["truncation"]["d"], 3);
  EXPECT_GT(j["system"]["rows"].get<int>(), 0);
  EXPECT_FALSE(j["checked_shapes"].empty());
}

TEST(CliCocycle, FourDimensionsSameVerdict) {
  const CliRun r = run("cocycle --d 4 --format text");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "f3_111((x1 d2)(x2 d3)(x3 d1)) = 1"));
  EXPECT_TRUE(has_line(r.out, "cocycle: true"));
  EXPECT_TRUE(has_line(r.out, "coboundary: false"));
}

TEST(CliCocycle, Rejections) {
  EXPECT_EQ(run("cocycle --d 2").code, 2);
  EXPECT_EQ(run("cocycle --Nmax 3").code, 2);
  EXPECT_EQ(run("cocycle --kmax 0").code, 2);
}

TEST(CliDifferential, ZeroSandboxGivesZeroMatrix) {
  const CliRun r = run("differential 2 zero --Nmax 3 --nmax 3");
  ASSERT_EQ(r.code, 0);
  const gch::SparseMat m = gch::from_matrix_market(r.out);
  EXPECT_GT(m.nrows(), 0);
  EXPECT_TRUE(m.is_zero());
}

TEST(CliDifferential, ConsecutiveExportsMultiplyToZero) {
  const auto dir = std::filesystem::temp_directory_path() / ("gch_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string common = " --d 2 --kmax 2 --Nmax 3 --nmax 3";
  ASSERT_EQ(run("differential 1" + common + " --out " + (dir / "d1.mtx").string()).code, 0);
  ASSERT_EQ(run("differential 2" + common + " --out " + (dir / "d2.mtx").string()).code, 0);
  ASSERT_EQ(run("differential 2" + common + " --out " + (dir / "d2b.mtx").string()).code, 0);
  const auto A = gch::from_matrix_market(slurp(dir / "d1.mtx")), B = gch::from_matrix_market(slurp(dir / "d2.mtx"));
  EXPECT_FALSE(A.is_zero());
  EXPECT_TRUE((B * A).is_zero());
  EXPECT_EQ(slurp(dir / "d2.mtx"), slurp(dir / "d2b.mtx"));
  std::filesystem::remove_all(dir);
}

TEST(CliDifferential, JsonMatchesMatrixMarket) {
  const std::string common = "differential 1 sandbox --seed 5 --Nmax 3 --nmax 3";
  const CliRun mm = run(common), js = run(common + " --format json");
  ASSERT_EQ(mm.code, 0);
  ASSERT_EQ(js.code, 0);
  const auto j = nlohmann::json::parse(js.out);
  const gch::SparseMat m = gch::from_matrix_market(mm.out);
  EXPECT_EQ(j["nrows"], m.nrows());
  EXPECT_EQ(j["ncols"], m.ncols());
  EXPECT_EQ(j["entries"].size(), static_cast<std::size_t>(m.nnz()));
}

TEST(CliDifferential, RejectsBadLevelAndPart) {
  EXPECT_EQ(run("differential 3 --Nmax 3").code, 2);
  EXPECT_EQ(run("differential 0").code, 2);
  EXPECT_EQ(run("differential 1 polyvec xx").code, 2);
  EXPECT_EQ(run("differential").code, 2);
}
