#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include <json.hpp>

#include "rbm/cli.hpp"

namespace rbm::cli {
namespace {

const std::string kData = RBM_DATA_DIR;

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun analyze(const std::string& file, OutputFormat format = OutputFormat::Table, bool all = false) {
  std::ostringstream out, err;
  const int status = run_analyze(kData + "/" + file, format, all, out, err);
  return {status, out.str(), err.str()};
}

CliRun census_run(const CensusCommand& cmd) {
  std::ostringstream out, err;
  const int status = run_census(cmd, out, err);
  return {status, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  return text.find(line + "\n") != std::string::npos;
}

TEST(ParseArgs, FormatsAndDims) {
  EXPECT_EQ(parse_format("csv"), OutputFormat::Csv);
  EXPECT_EQ(parse_format("json-lines"), OutputFormat::JsonLines);
  EXPECT_FALSE(parse_format("xml"));
  EXPECT_EQ(parse_dims("4..8"), (std::pair<std::size_t, std::size_t>{4, 8}));
  EXPECT_EQ(parse_dims("9"), (std::pair<std::size_t, std::size_t>{9, 9}));
  EXPECT_FALSE(parse_dims("8..4"));
  EXPECT_FALSE(parse_dims("a..b"));
}

TEST(Analyze, TorusTable) {
  const CliRun r = analyze("torus4.txt");
  EXPECT_EQ(r.status, exit_code::ok);
  EXPECT_TRUE(has_line(r.out, "orientable: true"));
  EXPECT_TRUE(has_line(r.out, "b1: 4"));
  EXPECT_TRUE(has_line(r.out, "b2: 6"));
  EXPECT_TRUE(has_line(r.out, "H1: Z^4"));
  EXPECT_TRUE(has_line(r.out, "H2(Z): Z^6"));
  EXPECT_TRUE(has_line(r.out, "dim_img_rho2: 6"));
  EXPECT_TRUE(has_line(r.out, "spin: true"));
  EXPECT_TRUE(has_line(r.out, "spinc: true"));
}

TEST(Analyze, A5WithAllOracles) {
  const CliRun r = analyze("a5.txt", OutputFormat::Table, true);
  EXPECT_EQ(r.status, exit_code::ok);
  EXPECT_TRUE(has_line(r.out, "H1: Z^1 + (Z/2)^4"));
  EXPECT_TRUE(has_line(r.out, "w2: x1*x3"));
  EXPECT_TRUE(has_line(r.out, "w2_square_free: x1*x2 + x2*x3"));
  EXPECT_TRUE(has_line(r.out, "derived_matrix:\n0 1 0 0 0\n0 0 1 0 0\n0 0 0 0 0\n0 0 0 0 0\n0 0 0 0 0"));
  EXPECT_TRUE(has_line(r.out, "spin: false"));
  EXPECT_TRUE(has_line(r.out, "spinc: false"));
  EXPECT_TRUE(has_line(r.out, "spinc_bockstein: false"));
  EXPECT_TRUE(has_line(r.out, "oracles_agree: true"));
}

TEST(Analyze, NonOrientableReportsNotApplicable) {
  const CliRun r = analyze("nonorientable3.txt");
  EXPECT_EQ(r.status, exit_code::ok);
  EXPECT_TRUE(has_line(r.out, "orientable: false"));
  EXPECT_TRUE(has_line(r.out, "spin: n/a"));
  EXPECT_TRUE(has_line(r.out, "spinc: n/a"));
}

TEST(Analyze, JsonLines) {
  const CliRun r = analyze("a5.txt", OutputFormat::JsonLines, true);
  ASSERT_EQ(r.status, exit_code::ok);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n"], 5);
  EXPECT_EQ(j["b1"], 1);
  EXPECT_EQ(j["spinc"], false);
  EXPECT_EQ(j["spinc_by_oracle"]["linear"], false);
  EXPECT_EQ(j["derived_matrix"].size(), 5u);

  const CliRun bad = analyze("nonorientable3.txt", OutputFormat::JsonLines);
  EXPECT_EQ(nlohmann::json::parse(bad.out)["spin"], "n/a");
}

TEST(Analyze, Csv) {
  const CliRun r = analyze("spin5.txt", OutputFormat::Csv);
  ASSERT_EQ(r.status, exit_code::ok);
  EXPECT_EQ(r.out,
            "n,orientable,b1,b2,h1,h2,dim_img_rho2,w2,w2_square_free,spin,spinc\n"
            "5,true,3,4,Z^3 + (Z/2)^2,Z^4 + (Z/2)^2,6,0,0,true,true\n");
}

TEST(Analyze, ErrorExitCodes) {
  const CliRun missing = analyze("does-not-exist.txt");
  EXPECT_EQ(missing.status, exit_code::io);

  const CliRun malformed = analyze("malformed.txt");
  EXPECT_EQ(malformed.status, exit_code::parse);
  EXPECT_NE(malformed.err.find("line 2, column 1"), std::string::npos) << malformed.err;
}

TEST(Census, CsvIsByteStableWithoutTiming) {
  CensusCommand cmd;
  cmd.dim_lo = 4;
  cmd.dim_hi = 7;
  cmd.format = OutputFormat::Csv;
  cmd.timing = false;
  const CliRun first = census_run(cmd);
  cmd.workers = 3;
  const CliRun second = census_run(cmd);
  EXPECT_EQ(first.status, exit_code::ok);
  EXPECT_EQ(first.out,
            "dimension,orientable,spinc,spin,elapsed_s\n"
            "4,8,8,8,\n"
            "5,64,56,30,\n"
            "6,1024,592,176,\n"
            "7,32768,7968,1482,\n");
  EXPECT_EQ(first.out, second.out);
}

TEST(Census, JsonLinesRows) {
  CensusCommand cmd;
  cmd.dim_lo = 4;
  cmd.dim_hi = 5;
  cmd.format = OutputFormat::JsonLines;
  const CliRun r = census_run(cmd);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j["dimension"], 4);
  EXPECT_EQ(j["orientable"], 8);
  EXPECT_TRUE(j.contains("elapsed_s"));
}

TEST(Census, RefusesDimensionTenWithoutAllowLong) {
  CensusCommand cmd;
  cmd.dim_lo = 9;
  cmd.dim_hi = 10;
  const CliRun r = census_run(cmd);
  EXPECT_EQ(r.status, exit_code::refused_long_run);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("--allow-long"), std::string::npos);
}

TEST(Census, RejectsBadRange) {
  CensusCommand cmd;
  cmd.dim_lo = 3;
  cmd.dim_hi = 5;
  EXPECT_EQ(census_run(cmd).status, exit_code::parse);
}

TEST(Census, CrosscheckReportsToStderr) {
  CensusCommand cmd;
  cmd.dim_lo = 7;
  cmd.dim_hi = 7;
  cmd.crosscheck = true;
  const CliRun r = census_run(cmd);
  EXPECT_EQ(r.status, exit_code::ok);
  EXPECT_NE(r.err.find("cross-checked 32 matrices, 0 mismatches"), std::string::npos) << r.err;
}

TEST(Verify, ExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(run_verify(4, 0, 0, out, err), exit_code::ok);
  EXPECT_EQ(out.str(), "ok: 8 matrices checked\n");

  std::ostringstream out2, err2;
  EXPECT_EQ(run_verify(6, 100, 42, out2, err2), exit_code::ok);

  OracleSet broken;
  broken.bockstein = [](const BottMatrix&) { return true; };
  std::ostringstream out3, err3;
  EXPECT_EQ(run_verify(5, 0, 0, out3, err3, broken), exit_code::verification_failed);
  EXPECT_NE(out3.str().find("# counterexample\n"), std::string::npos);
  // The dumped matrix parses back.
  const std::string dump = out3.str().substr(out3.str().find("# counterexample\n"));
  EXPECT_FALSE(has_spinc_combinatorial(parse(dump)));

  std::ostringstream out4, err4;
  EXPECT_EQ(run_verify(8, 0, 0, out4, err4), exit_code::parse);
}

}  // namespace
}  // namespace rbm::cli
