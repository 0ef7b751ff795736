#include "afspin/series.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "afspin/error.hpp"
#include "afspin/smith.hpp"

namespace afspin {

namespace {

Word word_of_vector(const PcPresentation& p, const std::vector<Int>& v) {
  Word w;
  for (int j = 0; j < static_cast<int>(v.size()); ++j)
    if (v[j] != 0) w.push_back({p.head_count() + j, v[j]});
  return w;
}

// Lower central terms by depth, index d >= 2, until the terms collapse.
// Distinct normal forms only.
std::vector<std::vector<NormalWord>> lower_central_terms(const Collector& c) {
  const PcPresentation& p = c.presentation();
  int n = p.lattice_count();
  std::vector<std::vector<NormalWord>> terms;
  std::vector<NormalWord> cur;
  std::set<std::vector<Int>> seen;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      NormalWord w =
          c.commutator(c.gen(p.head_count() + i), c.gen(p.head_count() + j));
      if (!w.is_identity() && seen.insert(w.e).second) cur.push_back(w);
    }
  while (!cur.empty()) {
    terms.push_back(cur);
    if (static_cast<int>(terms.size()) > n + 1)
      fail(errc::series,
           "lower central series does not collapse within the lattice rank");
    std::vector<NormalWord> next;
    seen.clear();
    for (int i = 0; i < n; ++i)
      for (const NormalWord& w : terms.back()) {
        NormalWord u = c.commutator(c.gen(p.head_count() + i), w);
        if (!u.is_identity() && seen.insert(u.e).second) next.push_back(u);
      }
    cur = std::move(next);
  }
  return terms;
}

// Generators of the depth d term as a subgroup: the stated commutators of
// depth d together with all deeper ones.
std::vector<NormalWord> cumulative_generators(
    const std::vector<std::vector<NormalWord>>& terms, int depth) {
  std::vector<NormalWord> out;
  for (int d = depth; d - 2 < static_cast<int>(terms.size()); ++d)
    for (const NormalWord& w : terms[d - 2]) out.push_back(w);
  return out;
}

IntMatrix rows_of(const Collector& c, const std::vector<NormalWord>& ws) {
  std::vector<std::vector<Int>> rows;
  for (const NormalWord& w : ws) rows.push_back(lattice_vector(c, w));
  return IntMatrix::from_rows(rows);
}

// Certifies z^q inside the subgroup generated by gens for some q in
// [1, bound]: a coefficient vector is solved over the generator rows, the
// residue is patched with central generators, and the resulting product is
// re-collected and compared. Returns the witness exponent.
std::optional<Int> bounded_power_membership(
    const Collector& c, const NormalWord& z,
    const std::vector<NormalWord>& gens, const std::vector<NormalWord>& central,
    const Int& bound) {
  if (gens.empty()) return std::nullopt;
  IntMatrix g = rows_of(c, gens);
  IntMatrix cen = central.empty() ? IntMatrix(0, g.cols) : rows_of(c, central);
  std::vector<Int> vz = lattice_vector(c, z);
  for (Int q = 1; q <= bound; ++q) {
    std::vector<Int> target(vz.size());
    for (size_t t = 0; t < vz.size(); ++t) target[t] = q * vz[t];
    auto x = membership_solve(g, target);
    if (!x) continue;
    NormalWord lhs = c.power(z, q);
    NormalWord rhs = c.identity();
    for (size_t t = 0; t < gens.size(); ++t)
      rhs = c.multiply(rhs, c.power(gens[t], (*x)[t]));
    if (rhs == lhs) return q;
    // patch the collection residue with central members
    std::vector<Int> r(vz.size());
    std::vector<Int> vl = lattice_vector(c, lhs), vr = lattice_vector(c, rhs);
    for (size_t t = 0; t < r.size(); ++t) r[t] = vl[t] - vr[t];
    if (cen.rows > 0) {
      if (auto y = membership_solve(cen, r)) {
        for (size_t t = 0; t < central.size(); ++t)
          rhs = c.multiply(rhs, c.power(central[t], (*y)[t]));
        if (rhs == lhs) return q;
      }
    }
  }
  return std::nullopt;
}

// Index of the row lattice inside its saturation: the product of the
// nonzero elementary divisors. This bounds the power needed to land a
// saturation member inside the lattice.
Int saturation_index(const IntMatrix& m) {
  Int idx = 1;
  for (const Int& d : smith_normal_form(m).divisors()) idx *= d;
  return idx;
}

bool vector_in_rows(const IntMatrix& rows, const std::vector<Int>& v) {
  return membership_solve(rows, v).has_value();
}

// Quotient basis of the row lattice of outer modulo inner, both saturated,
// rows of inner inside the span of outer. Solves inner in outer
// coordinates, then reads complementary basis rows off the Smith transform.
std::vector<std::vector<Int>> quotient_basis(const IntMatrix& outer,
                                             const IntMatrix& inner) {
  int k = outer.rows;
  if (inner.rows == 0) {
    std::vector<std::vector<Int>> rows;
    for (int i = 0; i < k; ++i) rows.push_back(outer.row(i));
    return rows;
  }
  IntMatrix x(inner.rows, k);
  for (int i = 0; i < inner.rows; ++i) {
    auto sol = membership_solve(outer, inner.row(i));
    if (!sol) fail(errc::series, "filtration subgroup is not nested");
    for (int j = 0; j < k; ++j) x.at(i, j) = (*sol)[j];
  }
  SmithDecomposition s = smith_normal_form(x);
  for (const Int& d : s.divisors())
    if (d != 1) fail(errc::series, "filtration quotient has torsion");
  // rows r..k-1 of v_inv complete the inner lattice to outer coordinates
  std::vector<std::vector<Int>> rows;
  for (int i = s.rank; i < k; ++i)
    rows.push_back(apply_row(s.v_inv.row(i), outer));
  return rows;
}

AdaptedSeriesData layers_from_isolators(const std::vector<IntMatrix>& iso,
                                        int n, bool declared) {
  AdaptedSeriesData out;
  out.n = n;
  out.from_declaration = declared;
  out.isolators = iso;
  out.isolators.push_back(IntMatrix(0, n));
  int total = 0;
  for (size_t i = 0; i + 1 < out.isolators.size(); ++i) {
    SeriesLayer layer;
    layer.depth = static_cast<int>(i) + 1;
    if (declared) {
      // suffix-shaped subgroups: the shallow rows of the outer basis are
      // exactly the declared generators in declaration order
      const IntMatrix& outer = out.isolators[i];
      int k = outer.rows - out.isolators[i + 1].rows;
      for (int r = 0; r < k; ++r) layer.basis.push_back(outer.row(r));
    } else {
      layer.basis = quotient_basis(out.isolators[i], out.isolators[i + 1]);
    }
    total += layer.rank();
    if (layer.rank() == 0)
      fail(errc::series, "filtration layer " + std::to_string(layer.depth) +
                             " is trivial");
    out.layers.push_back(std::move(layer));
  }
  if (total != n)
    fail(errc::series, "filtration layer ranks do not sum to the lattice rank");
  return out;
}

// Declared layers must be suffixes of the lattice generator list, in order.
int declared_suffix_start(const PcPresentation& p,
                          const std::vector<std::string>& names, int depth) {
  int n = p.lattice_count();
  int k = static_cast<int>(names.size());
  for (int t = 0; t < k; ++t)
    if (names[t] != p.lattice[n - k + t])
      fail(errc::series,
           "declared series layer at depth " + std::to_string(depth) +
               " is not a suffix of the lattice generator list");
  return n - k;
}

IntMatrix suffix_rows(int n, int start) {
  IntMatrix m(n - start, n);
  for (int i = 0; i < m.rows; ++i) m.at(i, start + i) = 1;
  return m;
}

AdaptedSeriesData verify_declared_series(
    const Collector& c, const std::vector<std::vector<NormalWord>>& terms) {
  const PcPresentation& p = c.presentation();
  int n = p.lattice_count();
  int cmax = p.declared_series.rbegin()->first;
  if (static_cast<int>(terms.size()) + 1 > cmax)
    fail(errc::series,
         "declared series is shorter than the lower central series");
  std::vector<IntMatrix> iso{IntMatrix::identity(n)};
  for (const auto& [depth, names] : p.declared_series) {
    int start = declared_suffix_start(p, names, depth);
    std::vector<NormalWord> gens = cumulative_generators(terms, depth);
    for (const NormalWord& w : gens) {
      std::vector<Int> v = lattice_vector(c, w);
      for (int t = 0; t < start; ++t)
        if (v[t] != 0)
          fail(errc::series, "commutator " + render(p, to_word(w)) +
                                 " falls outside the declared layer at depth " +
                                 std::to_string(depth));
    }
    std::vector<NormalWord> central = cumulative_generators(terms, 3);
    Int bound = gens.empty() ? 0 : saturation_index(rows_of(c, gens));
    for (const auto& name : names) {
      NormalWord z = c.gen(*p.gen_index(name));
      if (!bounded_power_membership(c, z, gens, central, bound))
        fail(errc::series, "no power of " + name +
                               " lands in the computed term at depth " +
                               std::to_string(depth));
    }
    iso.push_back(suffix_rows(n, start));
  }
  return layers_from_isolators(iso, n, true);
}

AdaptedSeriesData compute_series(
    const Collector& c, const std::vector<std::vector<NormalWord>>& terms) {
  const PcPresentation& p = c.presentation();
  int n = p.lattice_count();
  std::vector<IntMatrix> iso{IntMatrix::identity(n)};
  std::vector<NormalWord> central = cumulative_generators(terms, 3);
  for (int depth = 2; depth - 2 < static_cast<int>(terms.size()); ++depth) {
    std::vector<NormalWord> gens = cumulative_generators(terms, depth);
    // close the exponent span under conjugation, then saturate
    IntMatrix basis = hermite_normal_form(rows_of(c, gens));
    for (bool grew = true; grew;) {
      grew = false;
      for (int i = 0; i < basis.rows && !grew; ++i) {
        NormalWord w = c.normal_form(word_of_vector(p, basis.row(i)));
        for (int g = 0; g < p.gen_count() && !grew; ++g) {
          std::vector<Int> v =
              lattice_vector(c, c.conjugate(c.gen(g), w));
          if (vector_in_rows(basis, v)) continue;
          std::vector<std::vector<Int>> rows{v};
          for (int t = 0; t < basis.rows; ++t) rows.push_back(basis.row(t));
          basis = hermite_normal_form(IntMatrix::from_rows(rows));
          grew = true;
        }
      }
    }
    IntMatrix sat = hermite_saturate(basis);
    // group-level certificate: a power of each basis word is a member
    Int bound = saturation_index(basis);
    for (int i = 0; i < sat.rows; ++i) {
      NormalWord z = c.normal_form(word_of_vector(p, sat.row(i)));
      if (!bounded_power_membership(c, z, gens, central, bound))
        fail(errc::series,
             "computed isolator basis fails the power membership check at "
             "depth " +
                 std::to_string(depth));
    }
    for (int i = 0; i < sat.rows; ++i)
      if (!vector_in_rows(iso.back(), sat.row(i)))
        fail(errc::series, "computed filtration is not nested");
    iso.push_back(sat);
  }
  return layers_from_isolators(iso, n, false);
}

}  // namespace

std::vector<Int> lattice_vector(const Collector& c, const NormalWord& w) {
  const PcPresentation& p = c.presentation();
  for (int i = 0; i < p.head_count(); ++i)
    if (w.e[i] != 0)
      fail(errc::series,
           "element " + render(p, w) + " does not lie in the lattice");
  return std::vector<Int>(w.e.begin() + p.head_count(), w.e.end());
}

std::vector<NormalWord> lower_central_generators(const Collector& c,
                                                 int depth) {
  const PcPresentation& p = c.presentation();
  if (depth <= 1) {
    std::vector<NormalWord> out;
    for (int i = 0; i < p.lattice_count(); ++i)
      out.push_back(c.gen(p.head_count() + i));
    return out;
  }
  auto terms = lower_central_terms(c);
  if (depth - 2 >= static_cast<int>(terms.size())) return {};
  return terms[depth - 2];
}

AdaptedSeriesData adapted_series(const Collector& c) {
  const PcPresentation& p = c.presentation();
  auto terms = lower_central_terms(c);
  if (terms.size() + 1 > 3)
    fail(errc::series, "nilpotency class above 3 is not supported");
  if (!p.declared_series.empty()) return verify_declared_series(c, terms);
  return compute_series(c, terms);
}

std::optional<std::vector<Int>> layer_coordinates(const AdaptedSeriesData& s,
                                                  int layer,
                                                  const std::vector<Int>& v) {
  const SeriesLayer& l = s.layers[layer];
  std::vector<std::vector<Int>> rows = l.basis;
  const IntMatrix& deeper = s.isolators[layer + 1];
  for (int i = 0; i < deeper.rows; ++i) rows.push_back(deeper.row(i));
  auto x = membership_solve(IntMatrix::from_rows(rows), v);
  if (!x) return std::nullopt;
  return std::vector<Int>(x->begin(), x->begin() + l.rank());
}

HolonomyRep holonomy_representation(const Collector& c,
                                    const AdaptedSeriesData& s) {
  const PcPresentation& p = c.presentation();
  HolonomyRep rep;
  rep.n = s.n;
  for (const SeriesLayer& l : s.layers) rep.ranks.push_back(l.rank());
  for (int h = 0; h < p.head_count(); ++h) {
    IntMatrix m(s.n, s.n);
    int offset = 0;
    for (size_t li = 0; li < s.layers.size(); ++li) {
      const SeriesLayer& l = s.layers[li];
      for (int t = 0; t < l.rank(); ++t) {
        NormalWord z = c.normal_form(word_of_vector(p, l.basis[t]));
        NormalWord cz = c.conjugate(c.gen(h), z);
        std::vector<Int> v = lattice_vector(c, cz);
        auto coords = layer_coordinates(s, static_cast<int>(li), v);
        if (!coords)
          fail(errc::series, "action of " + p.heads[h].name +
                                 " leaks from layer " +
                                 std::to_string(l.depth));
        for (int r = 0; r < l.rank(); ++r)
          m.at(offset + r, offset + t) = (*coords)[r];
      }
      offset += l.rank();
    }
    Int d = det(m);
    if (d != 1 && d != -1)
      fail(errc::series, "action of " + p.heads[h].name +
                             " is not invertible over the integers");
    if (!power(m, p.heads[h].order).is_identity())
      fail(errc::series, "action of " + p.heads[h].name +
                             " does not have the stated order");
    rep.generator_matrices.emplace(h, std::move(m));
  }
  return rep;
}

}  // namespace afspin
