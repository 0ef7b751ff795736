#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "afspin/presentation.hpp"
#include "afspin/spin.hpp"

namespace afspin {

// One entry of the built-in catalog: the four parameterized 4-dimensional
// families plus flat and nilmanifold sanity anchors. page_ref and q_label
// point into the classification tables the families are drawn from.
struct FamilySpec {
  std::string id;
  std::string page_ref;
  std::string q_label;
  int lattice_class = 1;
  bool takes_k = false;
  bool takes_l = false;
  const char* source = nullptr;  // template text with default parameters
};

const std::vector<FamilySpec>& catalog_families();

// Throws errc::usage for an unknown id.
const FamilySpec& family_spec(const std::string& id);

// Parses the template with the given parameter values bound. Parameters
// must match the family's domain exactly (k >= 1, l >= 1 where taken).
PcPresentation instantiate_family(const std::string& id,
                                  const std::map<std::string, Int>& params);

// What the decision pipeline must produce for an instance; torsion and
// free_rank are set only where the theorem reaches the factorization step.
struct ExpectedVerdict {
  bool orientable = true;
  std::string spin;
  std::string theorem_case;
  std::optional<int> free_rank;
  std::optional<std::vector<Int>> torsion;
};

ExpectedVerdict expected_verdict(const std::string& id,
                                 const std::map<std::string, Int>& params);

// "Z^r x C_d x ..." rendering of an abelianization.
std::string ab_shape(const AbelianStructure& a);

struct TableOptions {
  std::vector<std::string> families{"F1", "F2", "F3", "F4"};
  std::vector<Int> ks{1, 2, 3, 4};
  std::vector<Int> ls{1, 2};
  std::string format = "text";  // text | csv | json
  SpinOptions spin;
};

// Runs the decision pipeline over every instance in the grid, aborts with a
// diff (errc::inconsistent) if any verdict deviates from the expected one,
// and renders the result. Text output carries one verified row per family;
// csv and json carry one row per instance.
std::string emit_table(const TableOptions& opts);

}  // namespace afspin
