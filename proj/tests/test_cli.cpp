#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "afspin/catalog.hpp"
#include "afspin/cli.hpp"
#include "afspin/report.hpp"
#include "afspin/spin.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"

using namespace afspin;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"afspin"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::filesystem::path p =
      std::filesystem::temp_directory_path() / ("afspin_test_" + name);
  std::ofstream f(p);
  f << text;
  f.close();
  return p.string();
}

const char* invalid_src = R"(
group BAD {
  lattice a;
  holonomy alpha: order 2;
  relations { }
}
)";

}  // namespace

TEST_CASE("check decides files and maps verdicts to exit codes") {
  std::string f1 = write_temp("f1.pcp", fixtures::f1_k1);

  CliResult text = run({"check", f1});
  CHECK(text.code == 0);
  CHECK(text.out.find("spin: no") != std::string::npos);
  CHECK(text.out.find("case: b") != std::string::npos);
  CHECK(text.err.empty());

  CliResult json = run({"check", f1, "--format", "json"});
  CHECK(json.code == 0);
  nlohmann::json rep = nlohmann::json::parse(json.out);
  CHECK(rep["name"] == "F1");
  CHECK(rep["spin"] == "no");
  CHECK(rep["case"] == "b");
  CHECK(rep["j"] == 2);

  CliResult auto_series = run({"check", f1, "--series-auto"});
  CHECK(auto_series.code == 0);
  CHECK(auto_series.out.find("spin: no") != std::string::npos);

  CliResult klein_gen = run({"catalog", "KLEIN4"});
  REQUIRE(klein_gen.code == 0);
  std::string klein = write_temp("klein.pcp", klein_gen.out);
  CliResult scope = run({"check", klein});
  CHECK(scope.code == 2);
  CHECK(scope.out.find("unknown-out-of-scope") != std::string::npos);

  CliResult missing = run({"check", "/nope/missing.pcp"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("file not found: /nope/missing.pcp") !=
        std::string::npos);

  std::string bad = write_temp("tampered.pcp", fixtures::tamper_f2_drop_twist);
  CliResult broken = run({"check", bad});
  CHECK(broken.code == 3);
  CHECK(broken.err.find("inconsistent") != std::string::npos);

  std::string garbage = write_temp("garbage.pcp", "group X {");
  CliResult parse = run({"check", garbage});
  CHECK(parse.code == 1);
  CHECK(parse.err.find("parse") != std::string::npos);
}

TEST_CASE("validate reports the three failure classes") {
  std::string f1 = write_temp("vf1.pcp", fixtures::f1_k1);
  CliResult ok = run({"validate", f1});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("valid: class 2") != std::string::npos);

  std::string invalid = write_temp("invalid.pcp", invalid_src);
  CliResult structural = run({"validate", invalid});
  CHECK(structural.code == 3);
  CHECK(structural.err.find("invalid:") != std::string::npos);
  CHECK(structural.err.find("power relation") != std::string::npos);

  std::string bad = write_temp("vtamper.pcp", fixtures::tamper_f1_fix_c);
  CliResult inconsistent = run({"validate", bad});
  CHECK(inconsistent.code == 3);
  CHECK(inconsistent.err.find("inconsistent:") != std::string::npos);

  std::string garbage = write_temp("vgarbage.pcp", "lattice a, b;");
  CHECK(run({"validate", garbage}).code == 1);
  CHECK(run({"validate", "/nope/nothing.pcp"}).code == 1);
}

TEST_CASE("catalog output round-trips through check") {
  CliResult gen = run({"catalog", "F2", "--k", "1", "--l", "1"});
  REQUIRE(gen.code == 0);
  CHECK(parse_presentation(gen.out) ==
        parse_presentation(fixtures::f2_k1l1));

  std::string path = write_temp("f2_roundtrip.pcp", gen.out);
  CliResult via_cli = run({"check", path, "--format", "json"});
  REQUIRE(via_cli.code == 0);
  SpinReport direct = decide_spin(parse_presentation(fixtures::f2_k1l1));
  CHECK(via_cli.out == spin_report_json(direct).dump(2) + "\n");

  CliResult no_k = run({"catalog", "F1"});
  CHECK(no_k.code == 1);
  CHECK(no_k.err.find("needs a parameter k") != std::string::npos);
  CliResult unknown = run({"catalog", "WAT", "--k", "1"});
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("unknown catalog family") != std::string::npos);
  CHECK(run({"catalog", "NIL", "--k", "2"}).code == 1);
}

TEST_CASE("table obeys family and range selections") {
  CliResult smoke =
      run({"table", "--family", "all", "--k", "1..2", "--l", "1",
           "--format", "csv"});
  REQUIRE(smoke.code == 0);
  std::vector<std::string> lines;
  {
    std::istringstream is(smoke.out);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
  }
  REQUIRE(lines.size() == 9);
  CHECK(lines[1] == "F1,\"5, p.171\",1,,2,true,1,b,2,Z x C_2 x C_2,no");
  CHECK(lines[2] == "F1,\"5, p.171\",2,,2,true,1,b,2,Z x C_2 x C_4,yes");

  CliResult one_family =
      run({"table", "--family", "F3", "--k", "4", "--format", "csv"});
  REQUIRE(one_family.code == 0);
  CHECK(one_family.out.find("F1") == std::string::npos);
  size_t rows = 0, yes = 0, pos = 0;
  while ((pos = one_family.out.find("\nF3,", pos)) != std::string::npos) {
    ++rows;
    ++pos;
  }
  pos = 0;
  while ((pos = one_family.out.find(",yes\n", pos)) != std::string::npos) {
    ++yes;
    ++pos;
  }
  CHECK(rows == 2);  // l runs over the default 1..2
  CHECK(yes == 2);

  CliResult json = run({"table", "--k", "2", "--format", "json"});
  REQUIRE(json.code == 0);
  nlohmann::json arr = nlohmann::json::parse(json.out);
  CHECK(arr.size() == 7);  // F1 once, the 3-step families twice each
  for (const auto& row : arr) CHECK(row["report"]["spin"] == "yes");

  CHECK(run({"table", "--k", "0..2"}).code == 1);
  CHECK(run({"table", "--k", "x"}).code == 1);
  CHECK(run({"table", "--format", "yaml"}).code == 1);
  CliResult anchor = run({"table", "--family", "KLEIN4"});
  CHECK(anchor.code == 1);
  CHECK(anchor.err.find("not part of the parameter table") !=
        std::string::npos);
  CHECK(run({"table", "--family", "WAT"}).code == 1);
}

TEST_CASE("the step budget environment variable is honored") {
  std::string f1 = write_temp("ef1.pcp", fixtures::f1_k1);

  setenv("AFSPIN_STEP_BUDGET", "1", 1);
  CliResult starved = run({"check", f1});
  unsetenv("AFSPIN_STEP_BUDGET");
  CHECK(starved.code == 3);
  CHECK(starved.err.find("collect-budget") != std::string::npos);

  setenv("AFSPIN_STEP_BUDGET", "junk", 1);
  CliResult junk = run({"check", f1});
  unsetenv("AFSPIN_STEP_BUDGET");
  CHECK(junk.code == 1);
  CHECK(junk.err.find("AFSPIN_STEP_BUDGET") != std::string::npos);

  setenv("AFSPIN_STEP_BUDGET", "-5", 1);
  CliResult negative = run({"check", f1});
  unsetenv("AFSPIN_STEP_BUDGET");
  CHECK(negative.code == 1);

  setenv("AFSPIN_STEP_BUDGET", "20000000", 1);
  CliResult plenty = run({"check", f1});
  unsetenv("AFSPIN_STEP_BUDGET");
  CHECK(plenty.code == 0);
}

TEST_CASE("usage errors and help exit cleanly") {
  CliResult bare = run({});
  CHECK(bare.code == 1);
  CHECK(bare.err.find("usage:") != std::string::npos);

  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"check"}).code == 1);

  std::string f1 = write_temp("uf1.pcp", fixtures::f1_k1);
  CHECK(run({"check", f1, "--format", "yaml"}).code == 1);

  CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("check") != std::string::npos);
  CHECK(help.out.find("table") != std::string::npos);
  CHECK(run({"check", "--help"}).code == 0);
}
