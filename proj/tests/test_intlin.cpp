#include <random>

#include "afspin/smith.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace afspin;

namespace {

IntMatrix mat(const std::vector<std::vector<long long>>& rows) {
  std::vector<std::vector<Int>> conv;
  for (const auto& r : rows) conv.emplace_back(r.begin(), r.end());
  return IntMatrix::from_rows(conv);
}

}  // namespace

TEST_CASE("matrix basics") {
  IntMatrix theta = mat({{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}});
  CHECK(det(theta) == 1);
  CHECK(trace(theta) == 0);
  CHECK(power(theta, 2).is_identity());
  CHECK(multiply(theta, IntMatrix::identity(4)) == theta);
  CHECK(power(theta, 0).is_identity());

  IntMatrix rot = mat({{0, -1}, {1, 0}});
  CHECK(det(rot) == 1);
  CHECK(power(rot, 4).is_identity());
  CHECK_FALSE(power(rot, 2).is_identity());
  CHECK(det(mat({{2, 0}, {0, 3}})) == 6);
  CHECK(det(mat({{1, 2}, {2, 4}})) == 0);
}

TEST_CASE("smith normal form on the worked example") {
  IntMatrix a = mat({{2, 4}, {6, 8}});
  SmithDecomposition s = smith_normal_form(a);
  CHECK(s.rank == 2);
  CHECK(s.d.at(0, 0) == 2);
  CHECK(s.d.at(1, 1) == 4);
  CHECK(s.d.at(0, 1) == 0);
  CHECK(s.d.at(1, 0) == 0);
  CHECK(multiply(multiply(s.u, a), s.v) == s.d);
  CHECK(abs(det(s.u)) == 1);
  CHECK(abs(det(s.v)) == 1);
  CHECK(multiply(s.u, s.u_inv).is_identity());
  CHECK(multiply(s.v, s.v_inv).is_identity());
}

TEST_CASE("smith normal form degenerate shapes") {
  CHECK(smith_normal_form(IntMatrix::identity(3)).d.is_identity());
  IntMatrix z(2, 3);
  SmithDecomposition s = smith_normal_form(z);
  CHECK(s.rank == 0);
  CHECK(s.d.is_zero());
  IntMatrix empty(0, 4);
  CHECK(smith_normal_form(empty).rank == 0);
}

TEST_CASE("smith normal form properties on random matrices") {
  std::mt19937 rng(20260817);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a.at(i, j) = entry(rng);
    SmithDecomposition s = smith_normal_form(a);
    REQUIRE(multiply(multiply(s.u, a), s.v) == s.d);
    REQUIRE(abs(det(s.u)) == 1);
    REQUIRE(abs(det(s.v)) == 1);
    REQUIRE(multiply(s.u, s.u_inv).is_identity());
    REQUIRE(multiply(s.v, s.v_inv).is_identity());
    std::vector<Int> dv = s.divisors();
    Int prod = 1;
    for (size_t i = 0; i < dv.size(); ++i) {
      REQUIRE(dv[i] > 0);
      if (i + 1 < dv.size()) REQUIRE(dv[i + 1] % dv[i] == 0);
      prod *= dv[i];
    }
    if (s.rank == 4) REQUIRE(prod == abs(det(a)));
    // off-diagonal must vanish
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) REQUIRE(s.d.at(i, j) == 0);
    REQUIRE(dv == oracle::snf_divisors_by_minors(a));
  }
}

TEST_CASE("hermite saturation") {
  IntMatrix g = mat({{2, 0}});
  IntMatrix sat = hermite_saturate(g);
  CHECK(sat == mat({{1, 0}}));

  // already saturated input is unchanged
  IntMatrix id2 = IntMatrix::identity(2);
  CHECK(hermite_saturate(id2) == id2);
  IntMatrix prim = mat({{2, 3}});
  CHECK(hermite_saturate(prim) == prim);

  // index-2 sublattice of Z^2 saturates to the full lattice
  CHECK(hermite_saturate(mat({{1, 1}, {1, -1}})) == id2);

  // saturation is idempotent
  IntMatrix g2 = mat({{2, 4, 0}, {0, 6, 3}});
  CHECK(hermite_saturate(hermite_saturate(g2)) == hermite_saturate(g2));

  CHECK(hermite_saturate(IntMatrix(0, 3)).rows == 0);
}

TEST_CASE("membership solve") {
  IntMatrix b = mat({{1, 0}, {0, 2}});
  auto x = membership_solve(b, {Int(3), Int(4)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 3);
  CHECK((*x)[1] == 2);
  CHECK_FALSE(membership_solve(b, {Int(0), Int(1)}).has_value());

  // random recombination round-trips
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix basis(2, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) basis.at(i, j) = entry(rng);
    std::vector<Int> coeff = {entry(rng), entry(rng)};
    std::vector<Int> v = apply_row(coeff, basis);
    auto sol = membership_solve(basis, v);
    REQUIRE(sol.has_value());
    CHECK(apply_row(*sol, basis) == v);
  }
}
