#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "afspin/holonomy.hpp"
#include "afspin/intmatrix.hpp"
#include "afspin/presentation.hpp"
#include "afspin/series.hpp"

namespace afspin {

// Abelianization together with the projection onto the cyclic 2-group
// generated by the head class. Factors are listed torsion first (invariant
// factor chain, trivial entries dropped) and then free, and q_images holds
// the image of each factor generator in Z/2^m in the same order.
struct AbelianStructure {
  int free_rank = 0;
  std::vector<Int> torsion;
  std::vector<Int> q_images;
};

// The matrix block of the spin report: the action of the distinguished
// generator, with its basis-independent invariants.
struct ThetaInfo {
  IntMatrix matrix;
  Int trace = 0;
  Int det = 0;
  Int order = 0;
};

struct SpinReport {
  std::string name;
  int n = 0;
  bool orientable = true;
  Int holonomy_order = 1;
  int m = 0;
  std::string theorem_case;  // trivial-sylow | a | b | out-of-scope
  std::optional<Int> j;
  std::optional<ThetaInfo> theta;
  std::optional<AbelianStructure> abelian;
  std::optional<bool> factors_through;
  std::vector<Int> witness;  // per-factor lifts in Z/2^{m+1} when they exist
  std::string spin;          // yes | no | unknown-out-of-scope
  std::vector<std::string> stage_errors;  // non-fatal notes
};

struct SpinOptions {
  bool series_auto = false;  // ignore declared filtrations
  bool diagnostics = false;  // run the factorization machinery even in case a
  std::optional<NormalWord> lift_override;
  long long step_budget = 10'000'000;  // collection budget per operation
};

// True iff every head generator acts with determinant one.
bool orientability(const HolonomyRep& rep);

// Order (2 or 4) of the lift of the diagonal involution with -1 exactly at
// the given 1-based positions, computed as the square of the corresponding
// signed monomial in the Clifford monoid. Requires |positions| even.
int clifford_oracle(const std::vector<int>& positions);

// For a matrix of order exactly 2^m returns (doubles, j) where
// j = (n - trace(a^{2^{m-1}}))/2 and doubles means j = 2 mod 4, the
// condition for the lift of the generator to have order 2^{m+1}.
std::pair<bool, Int> doubling_criterion(const IntMatrix& a, int m);

// Abelianizes a single-head presentation whose head has order 2^m and
// transports the head projection to per-factor images. Validates that the
// projection is well defined and surjective.
AbelianStructure abelianize_with_q(const PcPresentation& p);

// Whether the projection lifts along C_{2^{m+1}} -> C_{2^m}; on success the
// witness lists one lift value per factor, torsion first then free.
std::pair<bool, std::vector<Int>> factors_through_double(
    const AbelianStructure& a, int m);

// Full decision pipeline: validation, consistency, adapted series, holonomy
// action, orientability, 2-Sylow reduction, doubling criterion, and the
// factorization test. Errors from a stage are rethrown with the stage name
// prefixed to the message.
SpinReport decide_spin(const PcPresentation& p, const SpinOptions& opts = {});

}  // namespace afspin
