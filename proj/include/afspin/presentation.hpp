#pragma once
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "afspin/word.hpp"

namespace afspin {

struct HeadGen {
  std::string name;
  Int order;  // relative order, >= 2
  bool operator==(const HeadGen&) const = default;
};

// Direction in which a conjugation relation for the pair (i, j), i < j, was
// stated. Commutator input [x,y] = w lands in neg form. The collector
// derives whichever direction is missing.
//   pos: g_i g_j g_i^-1 = rhs
//   neg: g_i^-1 g_j g_i = rhs
enum class ConjDir { pos, neg };

struct ConjRelation {
  int i = 0, j = 0;
  ConjDir dir = ConjDir::pos;
  Word rhs;
  bool operator==(const ConjRelation&) const = default;
};

// Polycyclic presentation of an extension of a finitely generated
// torsion-free nilpotent group (the lattice) by a finite head block.
// Global generator order: heads first, then lattice generators; pairs with
// no stored relation commute.
struct PcPresentation {
  std::string name;
  std::vector<HeadGen> heads;
  std::vector<std::string> lattice;
  std::map<std::string, Int> parameters;
  std::map<int, Word> power_rhs;  // head index -> value of g^order
  std::map<std::pair<int, int>, ConjRelation> conj;
  std::map<int, std::vector<std::string>> declared_series;  // depth -> names

  int head_count() const { return static_cast<int>(heads.size()); }
  int lattice_count() const { return static_cast<int>(lattice.size()); }
  int gen_count() const { return head_count() + lattice_count(); }
  bool is_head(int i) const { return i < head_count(); }
  const std::string& gen_name(int i) const {
    return is_head(i) ? heads[i].name : lattice[i - head_count()];
  }
  std::optional<int> gen_index(const std::string& n) const;
  bool operator==(const PcPresentation&) const = default;
};

struct ValidationReport {
  bool valid = true;
  // Syntactic certificate: every stored commutator tail lies strictly
  // deeper than the conjugated generator, which bounds the lattice's
  // nilpotency class by the longest weight chain.
  int nilpotency_class = 1;
  std::vector<std::string> errors;
  std::vector<std::string> notes;
};

// Parses a .pcp source. Throws error(errc::parse) with 1-based line:col on
// syntax errors, undeclared generators, and unbound parameters.
PcPresentation parse_presentation(const std::string& source);

ValidationReport validate_structure(const PcPresentation& p);

// Canonical text form; parse(serialize(p)) == p.
std::string serialize(const PcPresentation& p);

// Token-level substitution: replaces parameter identifiers with the given
// values and rewrites the params clause to the bound values. Parsing the
// result equals parsing the original with those bindings.
std::string substitute_parameters(const std::string& source,
                                  const std::map<std::string, Int>& params);

}  // namespace afspin
