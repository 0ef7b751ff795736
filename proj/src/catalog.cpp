#include "afspin/catalog.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "afspin/error.hpp"
#include "afspin/report.hpp"

namespace afspin {

namespace {

// 2-step family: isolated commutator subgroup <d>, head inverting the
// (a, b)-plane with a swap and negating c.
const char* f1_source = R"(group F1 {
  params: k=1;
  lattice a, b, c, d;
  holonomy alpha: order 2;
  relations {
    [b, a] = 1;
    [c, a] = d^k;
    [d, a] = 1;
    [c, b] = d^k;
    [d, b] = 1;
    [d, c] = 1;
    alpha^2 = d;
    alpha a alpha^-1 = b^-1;
    alpha b alpha^-1 = a^-1;
    alpha c alpha^-1 = c^-1;
    alpha d alpha^-1 = d;
  }
  series { 2: d; }
}
)";

// first 3-step family: the head twists a into the second layer
const char* f2_source = R"(group F2 {
  params: k=1, l=1;
  lattice a, b, c, d;
  holonomy alpha: order 2;
  relations {
    [b, a] = c^(2 l) d^((2 l - 1) k);
    [c, a] = 1;
    [d, a] = 1;
    [c, b] = d^(2 k);
    [d, b] = 1;
    [d, c] = 1;
    alpha^2 = d;
    alpha a alpha^-1 = a c^-1;
    alpha b alpha^-1 = b^-1;
    alpha c alpha^-1 = c^-1;
    alpha d alpha^-1 = d;
  }
  series { 2: c, d; 3: d; }
}
)";

// second 3-step family: even center twist, head swaps a and b
const char* f3_source = R"(group F3 {
  params: k=1, l=1;
  lattice a, b, c, d;
  holonomy alpha: order 2;
  relations {
    [b, a] = c^(2 l);
    [c, a] = d^k;
    [d, a] = 1;
    [c, b] = d^(-k);
    [d, b] = 1;
    [d, c] = 1;
    alpha^2 = d;
    alpha a alpha^-1 = b;
    alpha b alpha^-1 = a;
    alpha c alpha^-1 = c^-1;
    alpha d alpha^-1 = d;
  }
  series { 2: c, d; 3: d; }
}
)";

// third 3-step family: odd center twist, which kills the middle torsion
// factor in the abelianization
const char* f4_source = R"(group F4 {
  params: k=1, l=1;
  lattice a, b, c, d;
  holonomy alpha: order 2;
  relations {
    [b, a] = c^(2 l + 1);
    [c, a] = d^k;
    [d, a] = 1;
    [c, b] = d^(-k);
    [d, b] = 1;
    [d, c] = 1;
    alpha^2 = d;
    alpha a alpha^-1 = b;
    alpha b alpha^-1 = a;
    alpha c alpha^-1 = c^-1;
    alpha d alpha^-1 = d;
  }
  series { 2: c, d; 3: d; }
}
)";

// F1's lattice on its own: a 2-step nilmanifold, trivial holonomy
const char* nil_source = R"(group NIL {
  lattice a, b, c, d;
  relations {
    [b, a] = 1;
    [c, a] = d;
    [d, a] = 1;
    [c, b] = d;
    [d, b] = 1;
    [d, c] = 1;
  }
  series { 2: d; }
}
)";

// orientable flat group: the involution negates two coordinates
const char* flat_c2_source = R"(group FLAT_C2 {
  lattice a, b, c, d;
  holonomy alpha: order 2;
  relations {
    alpha^2 = a;
    alpha c alpha^-1 = c^-1;
    alpha d alpha^-1 = d^-1;
  }
}
)";

// non-orientable flat group: a single negated coordinate, det -1
const char* klein4_source = R"(group KLEIN4 {
  lattice a, b, c, d;
  holonomy alpha: order 2;
  relations {
    alpha^2 = a;
    alpha d alpha^-1 = d^-1;
  }
}
)";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string shape_of(int free_rank, const std::vector<Int>& torsion) {
  std::string s;
  if (free_rank == 1) s = "Z";
  if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
  for (const Int& d : torsion) {
    if (!s.empty()) s += " x ";
    s += "C_" + d.str();
  }
  return s.empty() ? "1" : s;
}

struct TableRow {
  const FamilySpec* spec;
  Int k;
  std::optional<Int> l;
  SpinReport report;
};

void check_expected(const TableRow& row, const ExpectedVerdict& exp) {
  std::vector<std::string> diffs;
  auto want = [&](const std::string& field, const std::string& expected,
                  const std::string& got) {
    if (expected != got)
      diffs.push_back(field + ": expected " + expected + ", computed " + got);
  };
  want("orientable", exp.orientable ? "true" : "false",
       row.report.orientable ? "true" : "false");
  want("spin", exp.spin, row.report.spin);
  want("case", exp.theorem_case, row.report.theorem_case);
  if (exp.torsion) {
    if (!row.report.abelian)
      diffs.push_back("abelianization: expected one, none computed");
    else
      want("abelianization", shape_of(*exp.free_rank, *exp.torsion),
           ab_shape(*row.report.abelian));
  }
  if (diffs.empty()) return;
  std::ostringstream os;
  os << row.spec->id << " k=" << row.k;
  if (row.l) os << " l=" << *row.l;
  os << " deviates from the expected verdict:";
  for (const std::string& d : diffs) os << "\n  " << d;
  fail(errc::inconsistent, os.str());
}

std::string render_text(const std::vector<TableRow>& rows,
                        const TableOptions& opts) {
  // one verified line per family; the no-spin set is read off the grid
  std::ostringstream os;
  os << std::left << std::setw(8) << "family" << std::setw(11) << "ref"
     << std::setw(14) << "Q" << std::setw(7) << "class" << std::setw(17)
     << "abelianization" << std::setw(10) << "holonomy"
     << "no-spin\n";
  for (const std::string& id : opts.families) {
    const FamilySpec* spec = nullptr;
    std::vector<Int> no_spin;
    std::string shape;
    for (const TableRow& row : rows) {
      if (row.spec->id != id) continue;
      spec = row.spec;
      if (row.report.spin == "no" &&
          std::find(no_spin.begin(), no_spin.end(), row.k) == no_spin.end())
        no_spin.push_back(row.k);
      if (row.report.abelian) {
        // symbolic column: the torsion ends in C_2k, so substitute back
        std::string inst = ab_shape(*row.report.abelian);
        Int tk = row.k * 2;
        std::string tail = "C_" + tk.str();
        if (inst.size() >= tail.size() &&
            inst.compare(inst.size() - tail.size(), tail.size(), tail) == 0)
          inst.replace(inst.size() - tail.size(), tail.size(), "C_2k");
        if (shape.empty()) shape = inst;
        if (shape != inst)
          fail(errc::inconsistent, id + ": abelianization shape varies over "
                                       "the grid: " +
                                       shape + " vs " + inst);
      }
    }
    if (!spec) continue;
    std::string set = "none";
    if (!no_spin.empty()) {
      set = "k in {";
      for (size_t i = 0; i < no_spin.size(); ++i)
        set += (i ? ", " : "") + no_spin[i].str();
      set += "}";
    }
    os << std::left << std::setw(8) << spec->id << std::setw(11)
       << spec->page_ref << std::setw(14) << spec->q_label << std::setw(7)
       << spec->lattice_class << std::setw(17) << shape << std::setw(10)
       << "C_2" << set << "\n";
  }
  return os.str();
}

std::string render_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "family,page_ref,k,l,class,orientable,m,case,j,abelianization,spin\n";
  for (const TableRow& row : rows) {
    os << row.spec->id << "," << csv_field(row.spec->page_ref) << ","
       << row.k << ",";
    if (row.l) os << *row.l;
    os << "," << row.spec->lattice_class << ","
       << (row.report.orientable ? "true" : "false") << "," << row.report.m
       << "," << row.report.theorem_case << ",";
    if (row.report.j) os << *row.report.j;
    os << ",";
    if (row.report.abelian) os << csv_field(ab_shape(*row.report.abelian));
    os << "," << row.report.spin << "\n";
  }
  return os.str();
}

std::string render_json(const std::vector<TableRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const TableRow& row : rows) {
    nlohmann::ordered_json r;
    r["family"] = row.spec->id;
    r["page_ref"] = row.spec->page_ref;
    r["q"] = row.spec->q_label;
    r["k"] = row.k.convert_to<long long>();
    r["l"] = row.l ? nlohmann::ordered_json(row.l->convert_to<long long>())
                   : nlohmann::ordered_json(nullptr);
    r["class"] = row.spec->lattice_class;
    r["report"] = spin_report_json(row.report);
    arr.push_back(r);
  }
  return arr.dump(2) + "\n";
}

}  // namespace

const std::vector<FamilySpec>& catalog_families() {
  static const std::vector<FamilySpec> families = {
      {"F1", "5, p.171", "C2", 2, true, false, f1_source},
      {"F2", "3, p.220", "<(2l, 1)>", 3, true, true, f2_source},
      {"F3", "5, p.222", "<(2l, 0)>", 3, true, true, f3_source},
      {"F4", "5, p.222", "<(2l+1, 0)>", 3, true, true, f4_source},
      {"FLAT_C2", "", "", 1, false, false, flat_c2_source},
      {"NIL", "", "", 2, false, false, nil_source},
      {"KLEIN4", "", "", 1, false, false, klein4_source},
  };
  return families;
}

const FamilySpec& family_spec(const std::string& id) {
  for (const FamilySpec& f : catalog_families())
    if (f.id == id) return f;
  fail(errc::usage, "unknown catalog family: " + id);
}

PcPresentation instantiate_family(const std::string& id,
                                  const std::map<std::string, Int>& params) {
  const FamilySpec& spec = family_spec(id);
  std::map<std::string, Int> expected;
  if (spec.takes_k) {
    auto it = params.find("k");
    if (it == params.end() || it->second < 1)
      fail(errc::usage, id + " needs a parameter k >= 1");
    expected["k"] = it->second;
  }
  if (spec.takes_l) {
    auto it = params.find("l");
    if (it == params.end() || it->second < 1)
      fail(errc::usage, id + " needs a parameter l >= 1");
    expected["l"] = it->second;
  }
  if (params.size() != expected.size())
    fail(errc::usage, id + " does not take the given parameters");
  if (expected.empty()) return parse_presentation(spec.source);
  return parse_presentation(substitute_parameters(spec.source, expected));
}

ExpectedVerdict expected_verdict(const std::string& id,
                                 const std::map<std::string, Int>& params) {
  const FamilySpec& spec = family_spec(id);
  ExpectedVerdict v;
  if (spec.takes_k) {
    Int k = params.at("k");
    v.spin = k % 2 == 0 ? "yes" : "no";
    v.theorem_case = "b";
    v.free_rank = 1;
    if (id == "F4")
      v.torsion = std::vector<Int>{2 * k};
    else
      v.torsion = std::vector<Int>{2, 2 * k};
    return v;
  }
  if (id == "FLAT_C2") {
    v.spin = "yes";
    v.theorem_case = "b";
    v.free_rank = 2;
    v.torsion = std::vector<Int>{2, 2};
    return v;
  }
  if (id == "NIL") {
    v.spin = "yes";
    v.theorem_case = "trivial-sylow";
    return v;
  }
  // KLEIN4
  v.orientable = false;
  v.spin = "unknown-out-of-scope";
  v.theorem_case = "out-of-scope";
  return v;
}

std::string ab_shape(const AbelianStructure& a) {
  return shape_of(a.free_rank, a.torsion);
}

std::string emit_table(const TableOptions& opts) {
  if (opts.format != "text" && opts.format != "csv" && opts.format != "json")
    fail(errc::usage, "unknown table format: " + opts.format);
  std::vector<TableRow> rows;
  for (const std::string& id : opts.families) {
    const FamilySpec& spec = family_spec(id);
    if (!spec.takes_k)
      fail(errc::usage, id + " is not part of the parameter table");
    for (const Int& k : opts.ks) {
      std::vector<std::optional<Int>> lvals;
      if (spec.takes_l)
        for (const Int& l : opts.ls) lvals.push_back(l);
      else
        lvals.push_back(std::nullopt);
      for (const std::optional<Int>& l : lvals) {
        std::map<std::string, Int> params{{"k", k}};
        if (l) params["l"] = *l;
        PcPresentation p = instantiate_family(id, params);
        ValidationReport vr = validate_structure(p);
        if (vr.nilpotency_class != spec.lattice_class)
          fail(errc::inconsistent,
               id + ": lattice class " + std::to_string(vr.nilpotency_class) +
                   " does not match the catalog entry");
        TableRow row{&spec, k, l, decide_spin(p, opts.spin)};
        check_expected(row, expected_verdict(id, params));
        rows.push_back(std::move(row));
      }
    }
  }
  if (opts.format == "csv") return render_csv(rows);
  if (opts.format == "json") return render_json(rows);
  return render_text(rows, opts);
}

}  // namespace afspin
