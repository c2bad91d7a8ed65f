#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "json.hpp"
#include "spec_file.hpp"

using namespace aimlinsys;
using namespace aimlinsys::cli;
using nlohmann::json;

namespace {

std::string spec_path(const std::string& name) { return std::string(AIMLINSYS_SPEC_DIR) + "/" + name; }

struct Result {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "aimlinsys");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), {out, err});
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body = "") {
  auto p = std::filesystem::temp_directory_path() / ("aimlinsys_test_" + name);
  if (!body.empty()) std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST(SpecFile, ParsesSections) {
  SpecFile s = parse_spec_file("# c\n[system]\nlambda0 = a/x\n[params]\na = 2\n[run]\nmode = exact\n");
  EXPECT_EQ(s.system.at("lambda0").value, "a/x");
  EXPECT_EQ(s.system.at("lambda0").line, 3);
  EXPECT_EQ(s.system.at("lambda0").column, 11);
  EXPECT_EQ(s.params.at("a").value, "2");
}

TEST(SpecFile, ReportsPositions) {
  auto col = [](const std::string& text) {
    try {
      parse_spec_file(text);
    } catch (const ParseError& e) {
      return std::make_pair(e.line(), e.column());
    }
    return std::make_pair(0, 0);
  };
  EXPECT_EQ(col("[system]\nlambda0\n").first, 2);
  EXPECT_EQ(col("[bogus]\n").first, 1);
  EXPECT_EQ(col("[system]\na = 1\na = 2\n").first, 3);
  EXPECT_EQ(col("a = 1\n").first, 1);
}

TEST(SpecFile, ResolveConfigValidates) {
  SpecFile s = parse_spec_file("[system]\nlambda0=1\ns0=1\nomega0=1\nrho0=1\n[run]\ndomain = 0:1\nanchor = 2\n");
  EXPECT_THROW(resolve_config(s, {}), Error);
  CliOverrides ov;
  ov.anchor = 0.5;
  ov.tol = 1e-20;
  EXPECT_THROW(resolve_config(s, ov), Error);
  ov.tol = 1e-8;
  RunConfig cfg = resolve_config(s, ov);
  EXPECT_DOUBLE_EQ(*cfg.anchor, 0.5);
  EXPECT_THROW(parse_domain("1:0"), Error);
  EXPECT_EQ(parse_params("a=1/2,b=3").at("a"), Rational(1, 2));
}

TEST(Cli, AnalyzeConstantSystem) {
  Result r = run_cli({"analyze", spec_path("constant_real.spec")});
  EXPECT_EQ(r.code, 0);
  json j = r.j();
  EXPECT_EQ(j["schema"], "aimlinsys-report/1");
  EXPECT_EQ(j["certificate"]["kind"], "alpha");
  EXPECT_EQ(j["certificate"]["ratio"], "1");
}

TEST(Cli, AnalyzeComplexRoots) {
  Result r = run_cli({"analyze", spec_path("constant_complex.spec")});
  EXPECT_EQ(r.code, 0);
  json j = r.j();
  EXPECT_EQ(j["constant"]["alpha_text"][0], "(-1+2i)/5");
  EXPECT_LT(j["constant"]["discriminant"]["re"].get<double>(), 0.0);
}

TEST(Cli, AnalyzeNonTerminating) {
  Result r = run_cli({"analyze", spec_path("nonterminating.spec")});
  EXPECT_EQ(r.code, 1);
  json j = r.j();
  EXPECT_EQ(j["status"], "no-termination");
  EXPECT_EQ(j["iterations"].size(), 12u);  // n = 0..11
  for (const auto& it : j["iterations"])
    if (it.contains("delta_zero")) EXPECT_FALSE(it["delta_zero"].get<bool>());
}

TEST(Cli, SolvePaths) {
  auto path_of = [](const std::string& spec) { return run_cli({"solve", spec_path(spec)}).j()["path"]; };
  EXPECT_EQ(path_of("constant_complex.spec"), "const-coef");
  EXPECT_EQ(path_of("rank_one.spec"), "corollary");
  EXPECT_EQ(path_of("table1_row1.spec"), "aim-alpha");
  Result r = run_cli({"solve", spec_path("constant_complex.spec")});
  EXPECT_EQ(r.j()["alpha"], "(-1+2i)/5");
  Result c = run_cli({"solve", spec_path("rank_one.spec")});
  EXPECT_LE(c.j()["residual"]["max_residual_phi1"].get<double>(), 1e-8);
  EXPECT_EQ(run_cli({"solve", spec_path("nonterminating.spec")}).code, 1);
}

TEST(Cli, SolveWritesCsvAndVerifyReadsIt) {
  std::string csv = temp_file("ex2.csv");
  Result s = run_cli({"solve", spec_path("constant_real.spec"), "--out", csv});
  ASSERT_EQ(s.code, 0);
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header.rfind("x,re_phi1_1,im_phi1_1,re_phi2_1,im_phi2_1", 0), 0u);
  int rows = 0;
  for (std::string line; std::getline(f, line);) ++rows;
  EXPECT_EQ(rows, kCsvPoints);
  EXPECT_EQ(run_cli({"verify", spec_path("constant_real.spec"), "--solution", csv}).code, 0);
}

TEST(Cli, VerifyRejectsCorruptedCsv) {
  std::string csv = temp_file("ex2b.csv");
  ASSERT_EQ(run_cli({"solve", spec_path("constant_real.spec"), "--out", csv}).code, 0);
  std::ifstream in(csv);
  std::ostringstream bad;
  std::string line;
  std::getline(in, line);
  bad << line << "\n";
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    cells[3] = std::to_string(std::stod(cells[3]) * 1.5);
    for (std::size_t i = 0; i < cells.size(); ++i) bad << (i ? "," : "") << cells[i];
    bad << "\n";
  }
  std::string corrupted = temp_file("ex2_bad.csv", bad.str());
  Result r = run_cli({"verify", spec_path("constant_real.spec"), "--solution", corrupted});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.j()["status"], "fail");
}

TEST(Cli, VerifyByPathName) {
  EXPECT_EQ(run_cli({"verify", spec_path("constant_real.spec"), "--solution", "const-coef"}).code, 0);
  EXPECT_EQ(run_cli({"verify", spec_path("table5_row1.spec"), "--solution", "auto"}).code, 0);
}

TEST(Cli, ParseErrorExitCode) {
  std::string spec = temp_file("bad.spec", "[system]\nlambda0 = tanh(x\ns0 = 1\nomega0 = 1\nrho0 = 1\n");
  Result r = run_cli({"analyze", spec});
  EXPECT_EQ(r.code, 2);
  json j = r.j();
  EXPECT_EQ(j["error"]["type"], "parse");
  EXPECT_EQ(j["error"]["line"], 2);
  EXPECT_EQ(j["error"]["column"], 17);
  EXPECT_EQ(run_cli({"analyze", "/nonexistent/file.spec"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, OverridesApply) {
  Result r = run_cli({"analyze", spec_path("table1_row1.spec"), "--params", "a=2", "--nmax", "5"});
  EXPECT_EQ(r.j()["params"]["a"], "2");
  EXPECT_EQ(r.j()["n_max"], 5);
  EXPECT_EQ(run_cli({"analyze", spec_path("constant_real.spec"), "--domain", "2:1"}).code, 2);
}

TEST(Cli, DeterministicJson) {
  for (const char* cmd : {"analyze", "solve"}) {
    Result a = run_cli({cmd, spec_path("table1_row1.spec")});
    Result b = run_cli({cmd, spec_path("table1_row1.spec")});
    EXPECT_EQ(a.out, b.out);
  }
  Result a = run_cli({"tables", "II:1"}), b = run_cli({"tables", "II:1"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, TablesSelections) {
  Result r = run_cli({"tables", "I"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.j()["summary"]["total"], 32);
  EXPECT_EQ(run_cli({"tables", "III:1-4"}).code, 0);
  EXPECT_EQ(run_cli({"tables", "VI:1", "--no-oracle"}).code, 0);
  EXPECT_EQ(run_cli({"tables", "VII"}).code, 2);
  Result cat = run_cli({"tables", "all", "--catalog"});
  EXPECT_GT(cat.j()["catalog"].size(), 20u);
}
