#pragma once
#include <map>
#include <optional>
#include <vector>

#include "afspin/collector.hpp"
#include "afspin/intmatrix.hpp"

namespace afspin {

// One quotient of the adapted series. The basis rows are lattice exponent
// vectors representing the quotient modulo the next deeper subgroup.
struct SeriesLayer {
  int depth = 1;  // 1-based position in the filtration
  std::vector<std::vector<Int>> basis;
  int rank() const { return static_cast<int>(basis.size()); }
};

// Filtration of the lattice with torsion-free quotients, invariant under
// conjugation. isolators[i] holds HNF basis rows of the depth i+1 subgroup;
// entry 0 is the full lattice and the final entry is the empty matrix.
struct AdaptedSeriesData {
  int n = 0;
  bool from_declaration = false;
  std::vector<SeriesLayer> layers;
  std::vector<IntMatrix> isolators;
};

// Exponent vector of a lattice element. Throws when the head part of the
// normal form is nonzero.
std::vector<Int> lattice_vector(const Collector& c, const NormalWord& w);

// Generating words for the stated term of the lower central series of the
// lattice: depth 1 is the generator list, depth 2 the pair commutators,
// deeper terms commutators of lattice generators with the previous term.
// Returns the empty list once the terms collapse.
std::vector<NormalWord> lower_central_generators(const Collector& c,
                                                 int depth);

// Verifies the declared series against the computed lower central terms, or
// computes the isolator filtration when nothing is declared. Certificates
// are group level: every claimed membership is re-checked by collection.
// Throws error(errc::series) with the failed check.
AdaptedSeriesData adapted_series(const Collector& c);

// Coordinates of a lattice exponent vector in the given layer's quotient
// basis; nullopt when the vector lies outside the layer's subgroup.
std::optional<std::vector<Int>> layer_coordinates(const AdaptedSeriesData& s,
                                                  int layer,
                                                  const std::vector<Int>& v);

// Action of the head generators on the graded quotients, blocks in layer
// order with layer 1 first.
struct HolonomyRep {
  int n = 0;
  std::vector<int> ranks;
  std::map<int, IntMatrix> generator_matrices;  // head index -> matrix
};

// Assembles the block-diagonal action of every head generator and checks
// integrality (det +-1) and the relative order. Throws error(errc::series)
// when a conjugate leaves the lattice, leaks from its layer, or a check
// fails.
HolonomyRep holonomy_representation(const Collector& c,
                                    const AdaptedSeriesData& s);

}  // namespace afspin
