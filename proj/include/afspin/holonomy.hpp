#pragma once
#include <optional>
#include <vector>

#include "afspin/collector.hpp"

namespace afspin {

// 2-part of the holonomy group: 2^m is the largest power of two dividing
// the order, and cyclic says whether some element realizes it. The
// generator is the lexicographically least head tuple of order 2^m.
struct SylowInfo {
  int m = 0;
  bool cyclic = true;
  std::vector<Int> generator;
};

// The finite quotient by the lattice: elements are head exponent tuples in
// lexicographic order, products computed by collection and truncation.
struct HolonomyGroup {
  Int order = 1;
  std::vector<std::vector<Int>> elements;
  std::vector<std::vector<int>> table;  // table[i][j] = index of e_i * e_j
  std::vector<Int> element_orders;
  SylowInfo sylow2;
};

// Enumerates the quotient and checks the group axioms on the table. Throws
// error(errc::holonomy) when the quotient order exceeds 4096 and
// error(errc::inconsistent) when an axiom fails.
HolonomyGroup enumerate_holonomy(const Collector& c);

// Presentation of the preimage of the 2-Sylow subgroup: the same lattice
// under a single head of relative order 2^m lifting the Sylow generator.
// The lift is the plain head word unless an override (a normal form with
// the same image order) is supplied. Throws error(errc::holonomy) when the
// Sylow subgroup is trivial or not cyclic, or the override has the wrong
// image.
PcPresentation sylow2_reduce(
    const Collector& c, const HolonomyGroup& h,
    const std::optional<NormalWord>& lift_override = std::nullopt);

}  // namespace afspin
