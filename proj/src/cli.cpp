#include "afspin/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "afspin/catalog.hpp"
#include "afspin/collector.hpp"
#include "afspin/error.hpp"
#include "afspin/report.hpp"
#include "afspin/spin.hpp"

namespace afspin {

namespace {

int exit_code_for(const error& e) {
  switch (e.kind) {
    case errc::usage:
    case errc::parse:
      return 1;
    default:
      return 3;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::usage, "file not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "3" or "1..4", both ends inclusive
std::vector<Int> parse_range(const std::string& text) {
  try {
    size_t dots = text.find("..");
    Int lo(dots == std::string::npos ? text : text.substr(0, dots));
    Int hi(dots == std::string::npos ? text : text.substr(dots + 2));
    if (lo < 1 || hi - lo > 10000) throw std::runtime_error("out of range");
    std::vector<Int> out;
    for (Int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  } catch (const error&) {
    throw;
  } catch (const std::exception&) {
    fail(errc::usage, "bad parameter range: " + text);
  }
}

long long budget_from_env() {
  const char* env = std::getenv("AFSPIN_STEP_BUDGET");
  if (!env) return Collector::default_budget;
  char* end = nullptr;
  long long v = std::strtoll(env, &end, 10);
  if (end == env || *end != '\0' || v < 1)
    fail(errc::usage, std::string("AFSPIN_STEP_BUDGET is not a positive "
                                  "integer: ") +
                          env);
  return v;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"spin structure decisions for almost-flat manifolds"};
  app.require_subcommand(1);

  std::string check_path, check_format = "text";
  bool series_auto = false, diagnostics = false;
  CLI::App* check = app.add_subcommand(
      "check", "decide orientability and spin for a presentation file");
  check->add_option("file", check_path, "presentation (.pcp) file")
      ->required();
  check->add_option("--format", check_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--series-auto", series_auto,
                  "ignore declared filtrations and recompute them");
  check->add_flag("--diagnostics", diagnostics,
                  "log the factorization data even when case a decides");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand(
      "validate", "parse, validate, and consistency-check a file");
  validate->add_option("file", validate_path, "presentation (.pcp) file")
      ->required();

  std::string catalog_id;
  long long catalog_k = 0, catalog_l = 0;
  CLI::App* catalog =
      app.add_subcommand("catalog", "print a catalog family instance");
  catalog->add_option("id", catalog_id, "family id, e.g. F1 or NIL")
      ->required();
  catalog->add_option("--k", catalog_k, "k parameter");
  catalog->add_option("--l", catalog_l, "l parameter");

  std::string table_family = "all", table_k = "1..4", table_l = "1..2";
  std::string table_format = "text";
  CLI::App* table =
      app.add_subcommand("table", "run the classification grid");
  table->add_option("--family", table_family, "family id or 'all'");
  table->add_option("--k", table_k, "k range, e.g. 3 or 1..6");
  table->add_option("--l", table_l, "l range, e.g. 2 or 1..3");
  table->add_option("--format", table_format, "text, csv, or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  table->add_flag("--series-auto", series_auto,
                  "ignore declared filtrations and recompute them");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage: " << e.what() << "\n";
    return 1;
  }

  try {
    SpinOptions sopts;
    sopts.series_auto = series_auto;
    sopts.diagnostics = diagnostics;
    sopts.step_budget = budget_from_env();

    if (check->parsed()) {
      PcPresentation p = parse_presentation(read_file(check_path));
      SpinReport rep = decide_spin(p, sopts);
      if (check_format == "json")
        out << spin_report_json(rep).dump(2) << "\n";
      else
        out << spin_report_text(rep);
      return rep.spin == "unknown-out-of-scope" ? 2 : 0;
    }

    if (validate->parsed()) {
      PcPresentation p = parse_presentation(read_file(validate_path));
      ValidationReport v = validate_structure(p);
      if (!v.valid) {
        for (const std::string& e : v.errors) err << "invalid: " << e << "\n";
        return 3;
      }
      Collector c(p, sopts.step_budget);
      ConsistencyReport cr = c.consistency_check();
      if (!cr.consistent) {
        err << "inconsistent: " << cr.violations[0].test << ": "
            << cr.violations[0].detail << "\n";
        return 3;
      }
      out << "valid: class " << v.nilpotency_class << ", " << cr.checks_run
          << " overlap checks passed\n";
      return 0;
    }

    if (catalog->parsed()) {
      std::map<std::string, Int> params;
      if (catalog->count("--k")) params["k"] = catalog_k;
      if (catalog->count("--l")) params["l"] = catalog_l;
      out << serialize(instantiate_family(catalog_id, params));
      return 0;
    }

    TableOptions topts;
    topts.format = table_format;
    topts.spin = sopts;
    topts.ks = parse_range(table_k);
    topts.ls = parse_range(table_l);
    if (table_family != "all") topts.families = {table_family};
    out << emit_table(topts);
    return 0;
  } catch (const error& e) {
    err << errc_name(e.kind) << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace afspin
