#pragma once
#include <vector>

#include "afspin/bigint.hpp"

namespace afspin {

// One syllable of a word: generator index (into the presentation's global
// order, heads first) raised to an integer power.
struct Letter {
  int gen = 0;
  Int exp = 0;
  bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

// Collected exponent vector, one entry per generator in global order. Head
// entries lie in [0, relative order); lattice entries are unbounded.
struct NormalWord {
  std::vector<Int> e;

  NormalWord() = default;
  explicit NormalWord(int n) : e(n) {}

  bool is_identity() const {
    for (const Int& x : e)
      if (x != 0) return false;
    return true;
  }
  bool operator==(const NormalWord&) const = default;
};

inline Word inverse(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    r.push_back({it->gen, -it->exp});
  return r;
}

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline Word to_word(const NormalWord& n) {
  Word r;
  for (int i = 0; i < static_cast<int>(n.e.size()); ++i)
    if (n.e[i] != 0) r.push_back({i, n.e[i]});
  return r;
}

}  // namespace afspin
