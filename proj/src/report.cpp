#include "afspin/report.hpp"

#include <limits>
#include <sstream>

namespace afspin {

namespace {

using nlohmann::ordered_json;

ordered_json json_int(const Int& v) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (v >= lo && v <= hi) return v.convert_to<long long>();
  return v.str();
}

ordered_json json_ints(const std::vector<Int>& v) {
  ordered_json a = ordered_json::array();
  for (const Int& x : v) a.push_back(json_int(x));
  return a;
}

ordered_json json_matrix(const IntMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(json_int(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

nlohmann::ordered_json spin_report_json(const SpinReport& r) {
  ordered_json j;
  j["name"] = r.name;
  j["n"] = r.n;
  j["orientable"] = r.orientable;
  j["holonomy_order"] = json_int(r.holonomy_order);
  j["m"] = r.m;
  j["case"] = r.theorem_case;
  j["j"] = r.j ? json_int(*r.j) : ordered_json(nullptr);
  if (r.theta) {
    ordered_json t;
    t["generator"] = json_matrix(r.theta->matrix);
    t["trace"] = json_int(r.theta->trace);
    t["det"] = json_int(r.theta->det);
    t["order"] = json_int(r.theta->order);
    j["theta"] = t;
  } else {
    j["theta"] = nullptr;
  }
  if (r.abelian) {
    ordered_json a;
    a["free_rank"] = r.abelian->free_rank;
    a["torsion"] = json_ints(r.abelian->torsion);
    a["q_images"] = json_ints(r.abelian->q_images);
    j["abelianization"] = a;
  } else {
    j["abelianization"] = nullptr;
  }
  j["factors_through"] =
      r.factors_through ? ordered_json(*r.factors_through) : ordered_json(nullptr);
  j["witness"] = json_ints(r.witness);
  j["spin"] = r.spin;
  j["stage_errors"] = r.stage_errors;
  return j;
}

std::string spin_report_text(const SpinReport& r) {
  std::ostringstream os;
  os << "name: " << r.name << "\n";
  os << "n: " << r.n << "\n";
  os << "orientable: " << (r.orientable ? "yes" : "no") << "\n";
  os << "holonomy order: " << r.holonomy_order << "\n";
  os << "m: " << r.m << "\n";
  os << "case: " << r.theorem_case << "\n";
  if (r.j) os << "j: " << *r.j << "\n";
  if (r.theta)
    os << "theta: trace " << r.theta->trace << ", det " << r.theta->det
       << ", order " << r.theta->order << "\n";
  if (r.abelian) {
    os << "abelianization: free rank " << r.abelian->free_rank << ", torsion";
    if (r.abelian->torsion.empty()) os << " none";
    for (const Int& d : r.abelian->torsion) os << " " << d;
    os << "\n";
    os << "q images:";
    for (const Int& a : r.abelian->q_images) os << " " << a;
    os << "\n";
  }
  if (r.factors_through)
    os << "factors through double: " << (*r.factors_through ? "yes" : "no")
       << "\n";
  if (!r.witness.empty()) {
    os << "witness:";
    for (const Int& x : r.witness) os << " " << x;
    os << "\n";
  }
  os << "spin: " << r.spin << "\n";
  for (const std::string& e : r.stage_errors) os << "note: " << e << "\n";
  return os.str();
}

}  // namespace afspin
