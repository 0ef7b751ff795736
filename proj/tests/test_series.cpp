#include <string>
#include <vector>

#include "afspin/error.hpp"
#include "afspin/series.hpp"
#include "afspin/smith.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace afspin;

namespace {

Collector make(const char* src) { return Collector(parse_presentation(src)); }

Collector make_param(const char* src, const std::map<std::string, Int>& v) {
  return Collector(parse_presentation(substitute_parameters(src, v)));
}

// removes the series declaration so the computed path runs
std::string drop_series(std::string src) {
  size_t pos = src.find("series");
  if (pos == std::string::npos) return src;
  size_t end = src.find('}', pos);
  src.erase(pos, end - pos + 1);
  return src;
}

// replaces the series declaration with the given block
std::string swap_series(std::string src, const std::string& block) {
  size_t pos = src.find("series");
  size_t end = src.find('}', pos);
  src.replace(pos, end - pos + 1, block);
  return src;
}

IntMatrix span_of(const Collector& c, const std::vector<NormalWord>& ws) {
  std::vector<std::vector<Int>> rows;
  for (const NormalWord& w : ws) rows.push_back(lattice_vector(c, w));
  return hermite_normal_form(IntMatrix::from_rows(rows));
}

std::vector<int> ranks_of(const AdaptedSeriesData& s) {
  std::vector<int> r;
  for (const SeriesLayer& l : s.layers) r.push_back(l.rank());
  return r;
}

Int matrix_order(const IntMatrix& m, int cap = 16) {
  IntMatrix p = m;
  for (int o = 1; o <= cap; ++o, p = multiply(p, m))
    if (p.is_identity()) return o;
  return 0;
}

}  // namespace

TEST_CASE("lower central terms reproduce the stated commutators") {
  Collector g1 = make_param(fixtures::f1_k1, {{"k", 3}});
  // depth 1 is the lattice itself
  CHECK(lower_central_generators(g1, 1).size() == 4);
  // [c,a] = [c,b] = d^3 spans <d^3>
  auto d2 = lower_central_generators(g1, 2);
  CHECK(span_of(g1, d2) ==
        IntMatrix::from_rows({{0, 0, 0, 3}}));
  CHECK(lower_central_generators(g1, 3).empty());

  Collector g2 = make_param(fixtures::f2_k1l1, {{"k", 1}, {"l", 2}});
  // [b,a] = c^4 d^3 and [c,b] = d^2
  CHECK(span_of(g2, lower_central_generators(g2, 2)) ==
        IntMatrix::from_rows({{0, 0, 4, 1}, {0, 0, 0, 2}}));
  // [[b,a],b] generates the third term
  auto d3 = lower_central_generators(g2, 3);
  CHECK(!d3.empty());
  CHECK(span_of(g2, d3) == IntMatrix::from_rows({{0, 0, 0, 8}}));
  CHECK(lower_central_generators(g2, 4).empty());

  Collector flat = make(fixtures::z2);
  CHECK(lower_central_generators(flat, 2).empty());
}

TEST_CASE("adapted series layers follow the declarations") {
  Collector g1 = make(fixtures::f1_k1);
  AdaptedSeriesData s1 = adapted_series(g1);
  CHECK(s1.from_declaration);
  CHECK(s1.n == 4);
  CHECK(ranks_of(s1) == std::vector<int>{3, 1});
  CHECK(s1.layers[0].basis ==
        std::vector<std::vector<Int>>{{1, 0, 0, 0}, {0, 1, 0, 0},
                                      {0, 0, 1, 0}});
  CHECK(s1.layers[1].basis == std::vector<std::vector<Int>>{{0, 0, 0, 1}});

  AdaptedSeriesData s2 = adapted_series(make(fixtures::f2_k1l1));
  CHECK(ranks_of(s2) == std::vector<int>{2, 1, 1});

  AdaptedSeriesData sp = adapted_series(make(fixtures::f1_permuted));
  CHECK(ranks_of(sp) == std::vector<int>{3, 1});

  // declared layers verify for other parameter values too
  AdaptedSeriesData s3 =
      adapted_series(make_param(fixtures::f2_k1l1, {{"k", 5}, {"l", 2}}));
  CHECK(ranks_of(s3) == std::vector<int>{2, 1, 1});
}

TEST_CASE("adapted series is computed when none is declared") {
  // abelian lattices collapse to a single layer
  AdaptedSeriesData flat = adapted_series(make(fixtures::z2));
  CHECK(!flat.from_declaration);
  CHECK(ranks_of(flat) == std::vector<int>{2});
  CHECK(flat.layers[0].basis ==
        std::vector<std::vector<Int>>{{1, 0}, {0, 1}});

  // stripped declarations give the same filtration subgroups
  AdaptedSeriesData a1 =
      adapted_series(make(drop_series(fixtures::f1_k1).c_str()));
  CHECK(!a1.from_declaration);
  CHECK(ranks_of(a1) == std::vector<int>{3, 1});
  CHECK(a1.isolators[1] == IntMatrix::from_rows({{0, 0, 0, 1}}));

  AdaptedSeriesData a2 =
      adapted_series(make(drop_series(fixtures::f2_k1l1).c_str()));
  CHECK(ranks_of(a2) == std::vector<int>{2, 1, 1});
  CHECK(a2.isolators[1] ==
        IntMatrix::from_rows({{0, 0, 1, 0}, {0, 0, 0, 1}}));
  CHECK(a2.isolators[2] == IntMatrix::from_rows({{0, 0, 0, 1}}));
}

TEST_CASE("layer coordinates resolve against the stacked bases") {
  AdaptedSeriesData s = adapted_series(make(fixtures::f2_k1l1));
  // a c^-1 in the first layer reads off the (a, b) part
  auto c0 = layer_coordinates(s, 0, {1, 0, -1, 0});
  REQUIRE(c0.has_value());
  CHECK(*c0 == std::vector<Int>{1, 0});
  // c^-1 d^5 in the second layer drops the d part
  auto c1 = layer_coordinates(s, 1, {0, 0, -1, 5});
  REQUIRE(c1.has_value());
  CHECK(*c1 == std::vector<Int>{-1});
  // anything with an (a, b) component lies outside the second layer
  CHECK(!layer_coordinates(s, 1, {0, 1, -1, 0}).has_value());
}

TEST_CASE("declared series failures name the failed check") {
  std::string wide = swap_series(fixtures::f1_k1, "series { 2: c, d; }");
  CHECK_THROWS_WITH_AS(adapted_series(make(wide.c_str())),
                       doctest::Contains("no power of c"), error);

  std::string off = swap_series(fixtures::f1_permuted, "series { 2: a, d; }");
  CHECK_THROWS_WITH_AS(adapted_series(make(off.c_str())),
                       doctest::Contains("not a suffix"), error);

  std::string cut = swap_series(fixtures::f2_k1l1, "series { 2: c, d; }");
  CHECK_THROWS_WITH_AS(adapted_series(make(cut.c_str())),
                       doctest::Contains("shorter than"), error);
}

TEST_CASE("deep filtrations are rejected as unsupported") {
  const char* chain = R"(
    group CHAIN4 {
      lattice v, w, x, y, z;
      relations {
        [w, v] = x;
        [x, v] = y;
        [y, v] = z;
      }
    }
  )";
  CHECK_THROWS_WITH_AS(adapted_series(make(chain)),
                       doctest::Contains("class above 3"), error);
}

TEST_CASE("holonomy action matches the stated matrices") {
  Collector g1 = make(fixtures::f1_k1);
  HolonomyRep r1 = holonomy_representation(g1, adapted_series(g1));
  CHECK(r1.n == 4);
  CHECK(r1.ranks == std::vector<int>{3, 1});
  const IntMatrix& m1 = r1.generator_matrices.at(0);
  CHECK(m1 == IntMatrix::from_rows({{0, -1, 0, 0},
                                    {-1, 0, 0, 0},
                                    {0, 0, -1, 0},
                                    {0, 0, 0, 1}}));
  CHECK(trace(m1) == 0);
  CHECK(det(m1) == 1);
  CHECK(matrix_order(m1) == 2);

  Collector g2 = make(fixtures::f2_k1l1);
  HolonomyRep r2 = holonomy_representation(g2, adapted_series(g2));
  CHECK(r2.generator_matrices.at(0) ==
        IntMatrix::from_rows({{1, 0, 0, 0},
                              {0, -1, 0, 0},
                              {0, 0, -1, 0},
                              {0, 0, 0, 1}}));

  Collector g6 = make(fixtures::sync6);
  HolonomyRep r6 = holonomy_representation(g6, adapted_series(g6));
  const IntMatrix& m6 = r6.generator_matrices.at(0);
  CHECK(m6 == IntMatrix::from_rows({{0, -1}, {1, 1}}));
  CHECK(matrix_order(m6) == 6);

  Collector g4 = make(fixtures::flatc4);
  HolonomyRep r4 = holonomy_representation(g4, adapted_series(g4));
  const IntMatrix& m4 = r4.generator_matrices.at(0);
  CHECK(trace(m4) == 2);
  CHECK(det(m4) == 1);
  CHECK(matrix_order(m4) == 4);

  Collector g5 = make(fixtures::flat5a);
  HolonomyRep r5 = holonomy_representation(g5, adapted_series(g5));
  const IntMatrix& m5 = r5.generator_matrices.at(0);
  CHECK(trace(m5) == -3);
  CHECK(det(m5) == 1);
  CHECK(matrix_order(m5) == 2);

  // trivial holonomy gives an empty map
  Collector flat = make(fixtures::z2);
  CHECK(holonomy_representation(flat, adapted_series(flat))
            .generator_matrices.empty());
}

TEST_CASE("two-generator holonomy actions compose") {
  Collector g = make(fixtures::vier);
  AdaptedSeriesData s = adapted_series(g);
  HolonomyRep r = holonomy_representation(g, s);
  const IntMatrix& ms = r.generator_matrices.at(0);
  const IntMatrix& mt = r.generator_matrices.at(1);
  CHECK(det(ms) == 1);
  CHECK(det(mt) == 1);
  IntMatrix prod = multiply(ms, mt);
  // the product matrix is the action of the product word
  NormalWord st = g.multiply(g.gen(0), g.gen(1));
  for (int j = 0; j < 6; ++j) {
    NormalWord z = g.gen(g.presentation().head_count() + j);
    std::vector<Int> v = lattice_vector(g, g.conjugate(st, z));
    for (int i = 0; i < 6; ++i) CHECK(prod.at(i, j) == v[i]);
  }
}

TEST_CASE("representation invariants are independent of the series source") {
  for (const char* src : {fixtures::f1_k1, fixtures::f2_k1l1}) {
    Collector cd = make(src);
    Collector ca = make(drop_series(src).c_str());
    HolonomyRep rd = holonomy_representation(cd, adapted_series(cd));
    HolonomyRep ra = holonomy_representation(ca, adapted_series(ca));
    CHECK(rd.ranks == ra.ranks);
    const IntMatrix& md = rd.generator_matrices.at(0);
    const IntMatrix& ma = ra.generator_matrices.at(0);
    CHECK(trace(md) == trace(ma));
    CHECK(det(md) == det(ma));
    CHECK(matrix_order(md) == matrix_order(ma));
  }
  // the same group entered with a permuted generator list agrees too
  Collector cp = make(fixtures::f1_permuted);
  HolonomyRep rp = holonomy_representation(cp, adapted_series(cp));
  const IntMatrix& mp = rp.generator_matrices.at(0);
  CHECK(trace(mp) == 0);
  CHECK(det(mp) == 1);
  CHECK(matrix_order(mp) == 2);
}

TEST_CASE("representation defects are reported") {
  // action leaking across layers: the head sends c outside <c, d>
  std::string leak(fixtures::f2_k1l1);
  size_t at = leak.find("alpha c alpha^-1 = c^-1");
  REQUIRE(at != std::string::npos);
  leak.replace(at, 23, "alpha c alpha^-1 = b c^-1");
  Collector cl = make(leak.c_str());
  AdaptedSeriesData sl = adapted_series(cl);
  CHECK_THROWS_WITH_AS(holonomy_representation(cl, sl),
                       doctest::Contains("leaks from layer"), error);

  // non-unimodular action
  const char* stretch = R"(
    group DETX {
      lattice a, b;
      holonomy r: order 2;
      relations {
        r^2 = 1;
        r a r^-1 = a^2;
      }
    }
  )";
  Collector cs = make(stretch);
  AdaptedSeriesData ss = adapted_series(cs);
  CHECK_THROWS_WITH_AS(holonomy_representation(cs, ss),
                       doctest::Contains("not invertible"), error);

  // unimodular but of infinite order
  const char* shear = R"(
    group ORDX {
      lattice a, b;
      holonomy r: order 6;
      relations {
        r^6 = 1;
        r a r^-1 = b;
        r b r^-1 = a b;
      }
    }
  )";
  Collector co = make(shear);
  AdaptedSeriesData so = adapted_series(co);
  CHECK_THROWS_WITH_AS(holonomy_representation(co, so),
                       doctest::Contains("stated order"), error);
}
