#include "afspin/spin.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "afspin/collector.hpp"
#include "afspin/error.hpp"
#include "afspin/smith.hpp"

namespace afspin {

namespace {

Int two_pow(int m) {
  Int r = 1;
  for (int i = 0; i < m; ++i) r *= 2;
  return r;
}

Int nonneg_mod(const Int& a, const Int& mod) {
  Int r = a % mod;
  if (r < 0) r += mod;
  return r;
}

// smallest t >= 1 with a^t = I, or 0 if none up to the cap
Int matrix_order(const IntMatrix& a, const Int& cap) {
  IntMatrix b = a;
  for (Int t = 1; t <= cap; ++t) {
    if (b.is_identity()) return t;
    b = multiply(b, a);
  }
  return 0;
}

// runs a pipeline stage; failures inside are rethrown with the stage name
template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const error& e) {
    throw error(e.kind, std::string(name) + ": " + e.what());
  }
}

}  // namespace

bool orientability(const HolonomyRep& rep) {
  for (const auto& [h, mat] : rep.generator_matrices)
    if (det(mat) != 1) return false;
  return true;
}

int clifford_oracle(const std::vector<int>& positions) {
  std::set<int> seen(positions.begin(), positions.end());
  if (seen.size() != positions.size())
    fail(errc::spin, "clifford positions must be distinct");
  if (positions.size() % 2 != 0)
    fail(errc::spin, "clifford lift needs an even number of sign flips");
  // square the monomial by exact sign bookkeeping: adjacent distinct
  // symbols anticommute, equal adjacent symbols square to -1
  std::vector<int> s(seen.begin(), seen.end());
  s.insert(s.end(), seen.begin(), seen.end());
  int sign = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == s[i + 1]) {
        sign = -sign;
        s.erase(s.begin() + i, s.begin() + i + 2);
        changed = true;
        break;
      }
      if (s[i] > s[i + 1]) {
        sign = -sign;
        std::swap(s[i], s[i + 1]);
        changed = true;
        break;
      }
    }
  }
  return sign == 1 ? 2 : 4;
}

std::pair<bool, Int> doubling_criterion(const IntMatrix& a, int m) {
  if (m < 1) fail(errc::spin, "doubling criterion needs a nontrivial 2-part");
  if (a.rows != a.cols) fail(errc::spin, "doubling criterion needs a square matrix");
  IntMatrix half = power(a, two_pow(m - 1));
  if (half.is_identity())
    fail(errc::spin, "matrix order is below the stated 2-part");
  if (!multiply(half, half).is_identity())
    fail(errc::spin, "matrix order is above the stated 2-part");
  Int gap = Int(a.rows) - trace(half);
  if (gap % 2 != 0)
    fail(errc::spin, "trace gap of the involution is odd");
  Int j = gap / 2;
  return {j % 4 == 2, j};
}

AbelianStructure abelianize_with_q(const PcPresentation& p) {
  if (p.head_count() != 1)
    fail(errc::spin,
         "projection needs a single head generator; reduce to the 2-part "
         "first");
  int m = 0;
  Int t = p.heads[0].order;
  while (t % 2 == 0) {
    t /= 2;
    ++m;
  }
  if (t != 1 || m < 1)
    fail(errc::spin, "head order " + p.heads[0].order.str() +
                         " is not a positive power of two");
  Int mod = p.heads[0].order;
  int g = p.gen_count();

  // abelianized relation rows over all generators, head coordinate first
  std::vector<std::vector<Int>> rows;
  {
    std::vector<Int> r(g, 0);
    r[0] = mod;
    for (const Letter& l : p.power_rhs.at(0)) r[l.gen] -= l.exp;
    rows.push_back(r);
  }
  for (const auto& [key, rel] : p.conj) {
    std::vector<Int> r(g, 0);
    r[rel.j] += 1;
    for (const Letter& l : rel.rhs) r[l.gen] -= l.exp;
    if (std::any_of(r.begin(), r.end(), [](const Int& x) { return x != 0; }))
      rows.push_back(r);
  }

  SmithDecomposition s = smith_normal_form(IntMatrix::from_rows(rows));
  std::vector<Int> divisors = s.divisors();

  AbelianStructure out;
  out.free_rank = g - s.rank;
  // factor i is generated by row i of v_inv; its image under the head
  // projection is the head coordinate of that row
  auto image = [&](int i) { return nonneg_mod(s.v_inv.at(i, 0), mod); };
  for (int i = 0; i < s.rank; ++i) {
    Int a = image(i);
    if (nonneg_mod(divisors[i] * a, mod) != 0)
      fail(errc::spin,
           "projection is not well defined on the abelianization; the "
           "presentation does not surject onto the stated 2-part");
    if (divisors[i] > 1) {
      out.torsion.push_back(divisors[i]);
      out.q_images.push_back(a);
    }
  }
  for (int i = s.rank; i < g; ++i) out.q_images.push_back(image(i));

  bool odd = std::any_of(out.q_images.begin(), out.q_images.end(),
                         [](const Int& a) { return a % 2 == 1; });
  if (!odd)
    fail(errc::spin,
         "projection does not map the abelianization onto the cyclic "
         "target");
  return out;
}

std::pair<bool, std::vector<Int>> factors_through_double(
    const AbelianStructure& a, int m) {
  Int half = two_pow(m);
  Int full = half * 2;
  std::vector<Int> witness;
  for (size_t i = 0; i < a.torsion.size(); ++i) {
    // a lift of the factor generator must reduce to the image mod 2^m and
    // still be killed by the factor order mod 2^{m+1}
    std::optional<Int> pick;
    const Int candidates[2] = {a.q_images[i], a.q_images[i] + half};
    for (const Int& x : candidates)
      if (nonneg_mod(a.torsion[i] * x, full) == 0) {
        pick = x;
        break;
      }
    if (!pick) return {false, {}};
    witness.push_back(*pick);
  }
  for (int i = 0; i < a.free_rank; ++i)
    witness.push_back(a.q_images[a.torsion.size() + i]);
  return {true, witness};
}

SpinReport decide_spin(const PcPresentation& pres, const SpinOptions& opts) {
  PcPresentation p = pres;
  if (opts.series_auto) p.declared_series.clear();

  SpinReport rep;
  rep.name = p.name;
  rep.n = p.lattice_count();

  stage("validation", [&] {
    ValidationReport v = validate_structure(p);
    if (v.valid) return;
    std::ostringstream os;
    for (size_t i = 0; i < v.errors.size(); ++i)
      os << (i ? "; " : "") << v.errors[i];
    fail(errc::validate, os.str());
  });

  Collector c =
      stage("collection", [&] { return Collector(p, opts.step_budget); });
  stage("consistency", [&] {
    ConsistencyReport r = c.consistency_check();
    if (r.consistent) return;
    fail(errc::inconsistent, r.violations[0].test + " fails: " +
                                 r.violations[0].detail);
  });

  AdaptedSeriesData series = stage("series", [&] { return adapted_series(c); });
  HolonomyRep action =
      stage("representation", [&] { return holonomy_representation(c, series); });
  HolonomyGroup hol = stage("holonomy", [&] { return enumerate_holonomy(c); });
  rep.holonomy_order = hol.order;
  rep.m = hol.sylow2.m;

  rep.orientable = orientability(action);
  if (!rep.orientable) {
    for (int h = 0; h < p.head_count(); ++h)
      if (det(action.generator_matrices.at(h)) != 1) {
        ThetaInfo th;
        th.matrix = action.generator_matrices.at(h);
        th.trace = trace(th.matrix);
        th.det = det(th.matrix);
        th.order = matrix_order(th.matrix, hol.order);
        rep.theta = th;
        rep.stage_errors.push_back("orientability: the action of " +
                                   p.gen_name(h) + " has determinant -1");
        break;
      }
    rep.theorem_case = "out-of-scope";
    rep.spin = "unknown-out-of-scope";
    return rep;
  }

  if (rep.m == 0) {
    rep.theorem_case = "trivial-sylow";
    rep.spin = "yes";
    return rep;
  }

  if (!hol.sylow2.cyclic) {
    rep.theorem_case = "out-of-scope";
    rep.spin = "unknown-out-of-scope";
    rep.stage_errors.push_back(
        "holonomy: the 2-part of the holonomy group is not cyclic");
    return rep;
  }

  PcPresentation reduced = stage(
      "reduction", [&] { return sylow2_reduce(c, hol, opts.lift_override); });
  Collector cr = stage(
      "collection", [&] { return Collector(reduced, opts.step_budget); });
  stage("reduction", [&] {
    ConsistencyReport r = cr.consistency_check();
    if (r.consistent) return;
    fail(errc::inconsistent, r.violations[0].test + " fails: " +
                                 r.violations[0].detail);
  });

  AdaptedSeriesData rseries;
  try {
    rseries = stage("reduced series", [&] { return adapted_series(cr); });
  } catch (const error& e) {
    if (e.kind != errc::series || reduced.declared_series.empty()) throw;
    // the declared filtration certified the full group; if it fails on the
    // Sylow preimage, fall back to the computed one and note the switch
    rep.stage_errors.push_back(std::string(e.what()) +
                               "; recomputed the filtration instead");
    reduced.declared_series.clear();
    cr = Collector(reduced, opts.step_budget);
    rseries = stage("reduced series", [&] { return adapted_series(cr); });
  }
  HolonomyRep raction = stage("reduced representation", [&] {
    return holonomy_representation(cr, rseries);
  });

  const IntMatrix& a = raction.generator_matrices.at(0);
  auto [doubles, j] =
      stage("doubling criterion", [&] { return doubling_criterion(a, rep.m); });
  rep.j = j;

  ThetaInfo th;
  th.matrix = a;
  th.trace = trace(a);
  th.det = det(a);
  th.order = two_pow(rep.m);
  rep.theta = th;

  if (!doubles) {
    rep.theorem_case = "a";
    rep.spin = "yes";
    if (opts.diagnostics) {
      // case a decides the verdict; the factorization data is only logged
      try {
        rep.abelian = abelianize_with_q(reduced);
        auto [factors, witness] = factors_through_double(*rep.abelian, rep.m);
        rep.factors_through = factors;
        rep.witness = witness;
      } catch (const error& e) {
        rep.stage_errors.push_back(std::string("diagnostics: ") + e.what());
      }
    }
    return rep;
  }

  rep.theorem_case = "b";
  rep.abelian =
      stage("abelianization", [&] { return abelianize_with_q(reduced); });
  auto [factors, witness] = factors_through_double(*rep.abelian, rep.m);
  rep.factors_through = factors;
  rep.witness = witness;
  rep.spin = factors ? "yes" : "no";
  return rep;
}

}  // namespace afspin
