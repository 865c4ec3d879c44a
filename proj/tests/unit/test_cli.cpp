#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct Outcome {
  int status;
  std::string out;
};

// Runs from the source tree so relative paths in the goldens do not depend on the build location.
Outcome sydy(const std::string& args) {
  const std::string cmd = "cd " + std::string(SYDY_SOURCE_DIR) + " && " + SYDY_CLI + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int raw = pclose(p);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string source(const std::string& rel) { return std::string(SYDY_SOURCE_DIR) + "/" + rel; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Golden {
  const char* file;
  const char* args;
  int status;
};

const Golden kGolden[] = {
    {"ybe.json", "check ybe --format json --deterministic", 0},
    {"unitarity.json", "check unitarity --format json --deterministic", 0},
    {"weight.json", "check weight --format json --deterministic", 0},
    {"rll_eval.json", "check rll-eval --format json --deterministic", 0},
    {"relations_summary.json", "check relations --suite summary --window 8 --format json --deterministic", 1},
    {"relations_corrected.json", "check relations --suite corrected --window 8 --format json --deterministic", 0},
    {"hopf.json", "check hopf --window 6 --format json --deterministic", 1},
    {"ideal.json", "check ideal --modes 2 --degree 2 --format json --deterministic", 0},
    {"bad_rel.json", "check file samples/relations/bad.rel --format json --deterministic", 1},
    {"k_block.json", "check file samples/relations/k_block.rel --format json --deterministic", 0},
    {"specialized.json", "check relations --suite corrected --specialize hbar=1 --format json --deterministic", 0},
};



}  // namespace

class GoldenReport : public ::testing::TestWithParam<Golden> {};

TEST_P(GoldenReport, ByteIdentical) {
  const Golden& g = GetParam();
  const Outcome r = sydy(g.args);
  EXPECT_EQ(r.status, g.status) << g.args;
  const std::string want = slurp(source(std::string("tests/golden/") + g.file));
  ASSERT_FALSE(want.empty()) << g.file;
  EXPECT_EQ(r.out, want) << g.args;
}

INSTANTIATE_TEST_SUITE_P(Cli, GoldenReport, ::testing::ValuesIn(kGolden),
                         [](const auto& info) {
                           std::string n = info.param.file;
                           return n.substr(0, n.find('.'));
                         });

TEST(ExitStatus, Pass) {
  EXPECT_EQ(sydy("check ybe").status, 0);
  EXPECT_EQ(sydy("check rll-eval").status, 0);
  EXPECT_EQ(sydy("show currents --at w").status, 0);
  EXPECT_EQ(sydy("--help").status, 0);
}

TEST(ExitStatus, Fail) {
  EXPECT_EQ(sydy("check file " + source("samples/relations/bad.rel")).status, 1);
  EXPECT_EQ(sydy("check relations --suite derivation --window 4").status, 1);
}

TEST(ExitStatus, Usage) {
  for (const char* args : {"", "check", "check nonsense", "check ybe --window 1", "check ybe --format xml",
                           "check ybe --jobs 0", "check ideal --degree 1", "check ideal --family sideways",
                           "check relations --suite nope", "check file", "check file /nonexistent/x.rel",
                           "check ybe extra", "check ybe --specialize hbar=0", "check ybe --specialize u=1",
                           "check ybe --specialize hbar", "check ybe --bogus", "show currents --at u"})
    EXPECT_EQ(sydy(args).status, 2) << args;
  EXPECT_EQ(sydy("check file " + source("samples/relations/malformed.rel")).status, 2);
  EXPECT_EQ(sydy("check ideal --candidate " + source("samples/relations/bad.rel")).status, 2);
}

TEST(Json, Schema) {
  const Outcome r = sydy("check file " + source("samples/relations/bad.rel") + " --format json");
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.contains("config"));
  ASSERT_EQ(j["results"].size(), 1u);
  const auto& res = j["results"][0];
  EXPECT_EQ(res["verdict"], "fail");
  EXPECT_TRUE(res["millis"].is_number_integer());
  EXPECT_TRUE(res["witness"].contains("location"));
  EXPECT_TRUE(res["witness"].contains("lhs"));
  EXPECT_TRUE(res["witness"].contains("rhs"));
  EXPECT_EQ(j["summary"]["pass"], 0);
  EXPECT_EQ(j["summary"]["fail"], 1);
}

TEST(Json, SinglePass) {
  const auto j = nlohmann::json::parse(sydy("check ybe --format json").out);
  ASSERT_EQ(j["results"].size(), 1u);
  EXPECT_EQ(j["results"][0]["verdict"], "pass");
  EXPECT_FALSE(j["results"][0].contains("witness"));
}

TEST(Json, SpecializationCaveat) {
  const auto j = nlohmann::json::parse(sydy("check rll-eval --specialize hbar=1,w=2 --format json").out);
  EXPECT_TRUE(j["config"].contains("caveat"));
  EXPECT_EQ(j["config"]["specialize"]["hbar"], "1");
}

TEST(Determinism, RepeatedRuns) {
  const std::string args = "check relations --suite summary --window 6 --format json --deterministic";
  EXPECT_EQ(sydy(args).out, sydy(args).out);
}

TEST(Determinism, IndependentOfJobs) {
  const std::string args = "check relations --suite all --window 6 --format json --deterministic";
  const std::string one = sydy(args + " --jobs 1").out;
  EXPECT_EQ(one, sydy(args + " --jobs 4").out);
  EXPECT_EQ(one, sydy(args + " --jobs 16").out);
}

TEST(Text, Table) {
  const Outcome r = sydy("check hopf --window 4");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("ID"), std::string::npos);
  EXPECT_NE(r.out.find("VERDICT"), std::string::npos);
  EXPECT_NE(r.out.find("hopf.delta-E"), std::string::npos);
  EXPECT_NE(r.out.find("fail"), std::string::npos);
}
