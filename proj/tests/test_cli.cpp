#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Output {
  int code = -1;
  std::string out;
};

// Runs the command line tool; stderr is merged into the captured text when
// `merge` is set.
Output gmtame(const std::string& args, bool merge = false) {
  std::string cmd = std::string(GMTAME_CLI) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Output r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, SpectrumJson) {
  Output o = gmtame("spectrum 'x^2+y^2+x^2*y^2' --format json");
  ASSERT_EQ(o.code, 0);
  auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["mu"], 5);
  EXPECT_EQ(j["mean"], "1");
  ASSERT_EQ(j["spectrum"].size(), 3u);
  EXPECT_EQ(j["spectrum"][0]["alpha"], "1/2");
  EXPECT_EQ(j["spectrum"][1]["mult"], 3);
}

TEST(Cli, SpectrumText) {
  Output o = gmtame("spectrum 'x^2+y^2'");
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("spectrum: 1:1"), std::string::npos);
}

TEST(Cli, SaddleWithExplicitVariables) {
  Output o = gmtame("spectrum 'x*y' --vars x,y --format json");
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(nlohmann::json::parse(o.out)["spectrum"][0]["alpha"], "1");
}

TEST(Cli, GoodBasisJsonHasMatricesAndMonodromy) {
  Output o = gmtame("goodbasis 'x+y+z+x^2*y^2*z^2' --format json --checks full");
  ASSERT_EQ(o.code, 0);
  auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["A0"][0][3], "-25/8");
  EXPECT_EQ(j["A1"][4][4], "5/2");
  EXPECT_EQ(j["monodromy"]["classes"][1]["partition"], nlohmann::json({3}));
  EXPECT_EQ(j["phis"].size(), 5u);
}

TEST(Cli, RankOneGoodBasisIsOneLine) {
  Output o = gmtame("goodbasis 'x^2+y^2'");
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("phi[1] = 1\n"), std::string::npos);
  EXPECT_EQ(o.out.find("phi[2]"), std::string::npos);
}

TEST(Cli, PolynomialFromFile) {
  std::string path = temp_file("quartic.txt", "# quartic\nx^2+y^2\n+x^2*y^2\n");
  Output o = gmtame("spectrum @" + path + " --format json");
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(nlohmann::json::parse(o.out)["mu"], 5);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(gmtame("spectrum 'x^2*y'").code, 3);
  EXPECT_EQ(gmtame("spectrum 'x^2+'").code, 2);
  EXPECT_EQ(gmtame("spectrum 'x^2+y^2' --vars x").code, 2);
  EXPECT_EQ(gmtame("spectrum").code, 2);
  EXPECT_EQ(gmtame("spectrum 'x(x^2+y^3)^2+x' --k-max 1").code, 4);
  EXPECT_EQ(gmtame("spectrum @/nonexistent/file").code, 2);
  EXPECT_EQ(gmtame("spectrum 'theta*x^2+y^2'").code, 2);
}

TEST(Cli, ErrorObjectInJsonMode) {
  Output o = gmtame("goodbasis 'x^2*y' --format json");
  EXPECT_EQ(o.code, 3);
  auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["error"], "NotIsolated");
  EXPECT_EQ(j["exit_code"], 3);
}

TEST(Cli, VerboseReportsIterationCounts) {
  Output o = gmtame("spectrum 'x^2+y^2+x^2*y^2' --verbose", true);
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("lattice probes"), std::string::npos);
}

TEST(Cli, DeterministicBytes) {
  std::string args = "goodbasis 'x(x^2+y^3)^2+x' --format json";
  EXPECT_EQ(gmtame(args).out, gmtame(args).out);
}

TEST(Cli, ShippedCorpusPasses) {
  Output o = gmtame(std::string("verify ") + GMTAME_CORPUS + " --jobs 3");
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("7/7 cases passed"), std::string::npos);
  EXPECT_EQ(o.out, gmtame(std::string("verify ") + GMTAME_CORPUS).out);
}

TEST(Cli, CorruptedExpectationFailsWithDiff) {
  std::ifstream in(GMTAME_CORPUS);
  auto corpus = nlohmann::json::parse(in);
  corpus["cases"][0]["expect"]["spectrum"][0]["alpha"] = "1/3";
  corpus["cases"][1]["expect"]["monodromy"][0]["partition"] = {1, 1};
  std::string path = temp_file("corrupt.json", corpus.dump());
  Output o = gmtame("verify " + path);
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.out.find("FAIL quartic"), std::string::npos);
  EXPECT_NE(o.out.find("spectrum: expected"), std::string::npos);
  EXPECT_NE(o.out.find("monodromy: expected"), std::string::npos);
  EXPECT_NE(o.out.find("5/7 cases passed"), std::string::npos);
}

TEST(Cli, ExpectedErrorCase) {
  std::string path = temp_file("errors.json",
                               R"({"cases": [{"name": "line", "polynomial": "x^2*y", "expect_error": "NotIsolated"}]})");
  EXPECT_EQ(gmtame("verify " + path).code, 0);
}

TEST(Cli, EmptyCorpusPassesWithWarning) {
  std::string path = temp_file("empty.json", R"({"cases": []})");
  Output o = gmtame("verify " + path, true);
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("warning"), std::string::npos);
}

TEST(Cli, InvalidCorpusIsAParseError) {
  std::string path = temp_file("invalid.json", "{not json");
  EXPECT_EQ(gmtame("verify " + path).code, 2);
}
