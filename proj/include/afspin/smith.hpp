#pragma once
#include <optional>
#include <vector>

#include "afspin/intmatrix.hpp"

namespace afspin {

// u * a * v = d with u, v unimodular, d diagonal, d[i] >= 0 and
// d[i] | d[i+1]. The inverses are tracked during reduction so callers can
// change coordinates in both directions without a separate inversion step.
struct SmithDecomposition {
  IntMatrix u, v, d;
  IntMatrix u_inv, v_inv;
  int rank = 0;

  std::vector<Int> divisors() const;  // nonzero diagonal entries, in order
};

// Pivot rule: smallest nonzero absolute value in the trailing block, ties
// broken by row-major position. Rows are cleared before columns, and a
// divisor-chain violation pulls the offending row into the pivot row.
SmithDecomposition smith_normal_form(const IntMatrix& a);

// Canonical row-style Hermite normal form: positive pivots, entries above a
// pivot reduced into [0, pivot), zero rows dropped. Unique per row lattice,
// so it doubles as a lattice equality certificate.
IntMatrix hermite_normal_form(const IntMatrix& a);

// Basis (rows, in HNF) of the saturation of the row lattice of g inside
// Z^cols: all v with q*v in the lattice for some q != 0.
IntMatrix hermite_saturate(const IntMatrix& g);

// x with x * b = v over the integers, if it exists.
std::optional<std::vector<Int>> membership_solve(const IntMatrix& b,
                                                 const std::vector<Int>& v);

}  // namespace afspin
