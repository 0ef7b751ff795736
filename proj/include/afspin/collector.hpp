#pragma once
#include <string>
#include <vector>

#include "afspin/presentation.hpp"

namespace afspin {

std::string render(const PcPresentation& p, const Word& w);
std::string render(const PcPresentation& p, const NormalWord& n);

struct ConsistencyViolation {
  std::string test;    // overlap family, e.g. "k(ji)=(kj)i"
  std::string detail;  // generators involved and both collected sides
};

struct ConsistencyReport {
  bool consistent = true;
  std::vector<ConsistencyViolation> violations;
  int checks_run = 0;
};

// Collection from the left over a pc presentation. The constructor derives
// the missing direction of every conjugation pair (bounded fixed point for
// lattice conjugators, power formula for finite-order heads) and caches all
// unit rewrites; afterwards the object is immutable, so concurrent reads
// are safe. Every public operation is bounded by the step budget and
// throws errc::collect_budget when it is exhausted.
class Collector {
 public:
  static constexpr long long default_budget = 10'000'000;

  explicit Collector(const PcPresentation& p,
                     long long step_budget = default_budget);

  const PcPresentation& presentation() const { return p_; }
  long long step_budget() const { return budget_; }

  NormalWord identity() const { return NormalWord(n_); }
  NormalWord gen(int i) const;

  NormalWord normal_form(const Word& w) const;
  NormalWord multiply(const NormalWord& a, const NormalWord& b) const;
  NormalWord invert(const NormalWord& a) const;
  NormalWord power(const NormalWord& a, const Int& e) const;
  // x y x^-1
  NormalWord conjugate(const NormalWord& x, const NormalWord& y) const;
  // x^-1 y^-1 x y
  NormalWord commutator(const NormalWord& x, const NormalWord& y) const;

  // Collected g_i g_j g_i^-1 and g_i^-1 g_j g_i for i < j.
  NormalWord forward_conjugate(int i, int j) const;
  NormalWord inverse_conjugate(int i, int j) const;
  bool commutes(int i, int j) const;

  // Overlap tests: associativity triples, power overlaps on both sides,
  // power-power, and the derived-inverse check. Reports the first
  // violation found.
  ConsistencyReport consistency_check() const;

 private:
  struct Budget {
    long long left;
    void charge(long long n);
  };

  struct PairRule {
    bool commute = true;
    // pos_ready: w[0][*] usable (needs g_i g_j g_i^-1), neg_ready: w[1][*]
    // usable. During construction a pair may be staged one-sided from its
    // given relation before the other side is derived.
    bool pos_ready = false;
    bool neg_ready = false;
    // replacement W in (g_j^sj)(g_i^si) -> (g_i^si) W, indexed
    // [si > 0][sj > 0]
    Word w[2][2];
  };

  PairRule& rule(int i, int j) { return rules_[static_cast<size_t>(i) * n_ + j]; }
  const PairRule& rule(int i, int j) const {
    return rules_[static_cast<size_t>(i) * n_ + j];
  }

  NormalWord collect(Word w, Budget& b) const;
  NormalWord multiply_b(const NormalWord& a, const NormalWord& b2, Budget& b) const;
  NormalWord invert_b(const NormalWord& a, Budget& b) const;
  NormalWord power_b(const NormalWord& a, const Int& e, Budget& b) const;
  Word side_word(int i, int a, ConjDir d) const;
  Word substitute(int i, ConjDir d, const NormalWord& x, Budget& b) const;
  void derive_pair(int i, int j);
  void finalize_pair(int i, int j, const Word& pos, const Word& neg);

  PcPresentation p_;
  int n_ = 0;
  int heads_ = 0;
  long long budget_;
  std::vector<PairRule> rules_;
  std::vector<Word> power_word_;         // per head
  std::vector<NormalWord> pos_conj_, neg_conj_;  // per pair, collected
};

}  // namespace afspin
