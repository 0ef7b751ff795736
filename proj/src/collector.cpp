#include "afspin/collector.hpp"

#include <algorithm>
#include <sstream>

#include "afspin/error.hpp"

namespace afspin {

std::string render(const PcPresentation& p, const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Letter& l : w) {
    if (!first) os << ' ';
    first = false;
    os << p.gen_name(l.gen);
    if (l.exp != 1) os << '^' << l.exp;
  }
  return os.str();
}

std::string render(const PcPresentation& p, const NormalWord& n) {
  return render(p, to_word(n));
}

void Collector::Budget::charge(long long n) {
  if (n > left) fail(errc::collect_budget, "collection step budget exhausted");
  left -= n;
}

static bool is_single(const Word& w, int gen) {
  return w.size() == 1 && w[0].gen == gen && w[0].exp == 1;
}

Collector::Collector(const PcPresentation& p, long long step_budget)
    : p_(p), n_(p.gen_count()), heads_(p.head_count()), budget_(step_budget) {
  if (budget_ <= 0) fail(errc::usage, "step budget must be positive");
  ValidationReport vr = validate_structure(p_);
  if (!vr.valid)
    fail(errc::validate, "presentation rejected: " + vr.errors.front());

  power_word_.resize(heads_);
  for (int h = 0; h < heads_; ++h) {
    auto it = p_.power_rhs.find(h);
    if (it == p_.power_rhs.end())
      fail(errc::validate, "missing power relation for " + p_.gen_name(h));
    power_word_[h] = it->second;
  }

  rules_.assign(static_cast<size_t>(n_) * n_, PairRule{});
  for (int i = n_ - 2; i >= 0; --i) {
    // Stage the given side of every pair (i, *) first: head derivations
    // below may collect words whose letters peel past g_i and need the
    // stated direction of sibling pairs.
    for (int j = i + 1; j < n_; ++j) {
      PairRule& r = rule(i, j);
      auto it = p_.conj.find({i, j});
      if (it == p_.conj.end()) {
        finalize_pair(i, j, {Letter{j, 1}}, {Letter{j, 1}});
        continue;
      }
      const ConjRelation& c = it->second;
      if (p_.is_head(i) && c.dir != ConjDir::pos)
        fail(errc::validate, "conjugation by head " + p_.gen_name(i) +
                                 " must be stated as forward conjugation");
      if (is_single(c.rhs, j)) {
        finalize_pair(i, j, {Letter{j, 1}}, {Letter{j, 1}});
        continue;
      }
      r.commute = false;
      int s = c.dir == ConjDir::pos ? 0 : 1;
      r.w[s][1] = c.rhs;
      r.w[s][0] = inverse(c.rhs);
      (c.dir == ConjDir::pos ? r.pos_ready : r.neg_ready) = true;
    }
    for (int j = n_ - 1; j > i; --j)
      if (!(rule(i, j).pos_ready && rule(i, j).neg_ready)) derive_pair(i, j);
  }

  pos_conj_.resize(rules_.size());
  neg_conj_.resize(rules_.size());
  for (int i = 0; i < n_ - 1; ++i)
    for (int j = i + 1; j < n_; ++j) {
      Budget b{budget_};
      pos_conj_[static_cast<size_t>(i) * n_ + j] = collect(rule(i, j).w[0][1], b);
      neg_conj_[static_cast<size_t>(i) * n_ + j] = collect(rule(i, j).w[1][1], b);
    }
}

void Collector::finalize_pair(int i, int j, const Word& pos, const Word& neg) {
  PairRule& r = rule(i, j);
  r.w[0][1] = pos;
  r.w[0][0] = inverse(pos);
  r.w[1][1] = neg;
  r.w[1][0] = inverse(neg);
  r.commute = is_single(pos, j) && is_single(neg, j);
  r.pos_ready = r.neg_ready = true;
}

Word Collector::side_word(int i, int a, ConjDir d) const {
  const PairRule& r = rule(i, a);
  bool ok = d == ConjDir::pos ? r.pos_ready : r.neg_ready;
  if (!ok)
    fail(errc::inconsistent, "conjugation rule for (" + p_.gen_name(i) + ", " +
                                 p_.gen_name(a) + ") used before derivation");
  return r.w[d == ConjDir::pos ? 0 : 1][1];
}

// Applies x -> g_i^e x g_i^-e letterwise with e = +1 (pos) or -1 (neg),
// i.e. substitutes every letter by its stated conjugate under g_i.
Word Collector::substitute(int i, ConjDir d, const NormalWord& x,
                           Budget& b) const {
  Word out;
  for (const Letter& l : to_word(x)) {
    Word s = side_word(i, l.gen, d);
    if (s.size() == 1) {
      out.push_back({s[0].gen, s[0].exp * l.exp});
      b.charge(1);
      continue;
    }
    if (l.exp < 0) s = inverse(s);
    Int reps = abs(l.exp);
    if (reps > b.left) fail(errc::collect_budget, "collection step budget exhausted");
    b.charge(to_ll(reps) * static_cast<long long>(s.size()));
    for (Int t = 0; t < reps; ++t) out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

void Collector::derive_pair(int i, int j) {
  auto it = p_.conj.find({i, j});
  if (it == p_.conj.end())
    fail(errc::inconsistent, "derivation requested for a commuting pair");
  const ConjRelation& c = it->second;
  Budget b{budget_};

  if (p_.is_head(i)) {
    // Given g_i g_j g_i^-1 = c and g_i^o = w, the backward conjugate is
    // g_i^-1 g_j g_i = g_i^(o-1) w^-1 g_j w g_i^(1-o). Collecting it only
    // peels negative g_i units, which the staged forward words cover.
    const Int& o = p_.heads[i].order;
    const Word& pw = power_word_[i];
    Word w;
    if (o > 1) w.push_back({i, o - 1});
    Word ipw = inverse(pw);
    w.insert(w.end(), ipw.begin(), ipw.end());
    w.push_back({j, 1});
    w.insert(w.end(), pw.begin(), pw.end());
    if (o > 1) w.push_back({i, 1 - o});
    NormalWord neg = collect(std::move(w), b);
    finalize_pair(i, j, c.rhs, to_word(neg));
    return;
  }

  // Lattice conjugator: solve F(x) = g_j for x by a unipotent fixed point,
  // where F conjugates letterwise in the stated direction. The error term
  // moves strictly down the filtration, so it dies within the generator
  // count.
  NormalWord target(n_);
  target.e[j] = 1;
  NormalWord x = target;
  bool found = false;
  for (int round = 0; round < n_ + 2; ++round) {
    NormalWord y = collect(substitute(i, c.dir, x, b), b);
    if (y == target) {
      found = true;
      break;
    }
    x = multiply_b(x, multiply_b(invert_b(y, b), target, b), b);
  }
  if (!found)
    fail(errc::inconsistent,
         "conjugation by " + p_.gen_name(i) + " does not invert on " +
             p_.gen_name(j) + "; the lattice relations are not filtered");
  Word xw = to_word(x);
  if (c.dir == ConjDir::pos)
    finalize_pair(i, j, c.rhs, xw);
  else
    finalize_pair(i, j, xw, c.rhs);
}

NormalWord Collector::collect(Word w, Budget& b) const {
  size_t hint = 0;
  for (;;) {
    b.charge(1);
    enum { none, drop, range, merge, swap_units } kind = none;
    size_t p = hint;
    for (; p < w.size(); ++p) {
      const Letter& L = w[p];
      if (L.exp == 0) {
        kind = drop;
        break;
      }
      if (p_.is_head(L.gen) && (L.exp < 0 || L.exp >= p_.heads[L.gen].order)) {
        kind = range;
        break;
      }
      if (p + 1 < w.size()) {
        const Letter& R = w[p + 1];
        if (R.exp == 0) {
          ++p;
          kind = drop;
          break;
        }
        if (R.gen == L.gen) {
          kind = merge;
          break;
        }
        if (L.gen > R.gen) {
          kind = swap_units;
          break;
        }
      }
    }
    if (kind == none) break;

    if (kind == drop) {
      w.erase(w.begin() + p);
    } else if (kind == merge) {
      w[p].exp += w[p + 1].exp;
      w.erase(w.begin() + p + 1);
    } else if (kind == range) {
      const Int& o = p_.heads[w[p].gen].order;
      Int r = mod_floor(w[p].exp, o);
      Int q = div_exact(w[p].exp - r, o);
      const Word& pw = power_word_[w[p].gen];
      Word block;
      if (!pw.empty() && q != 0) {
        b.charge(static_cast<long long>(pw.size()) + 1);
        block = to_word(power_b(collect(pw, b), q, b));
      }
      w[p].exp = r;
      size_t at = p + 1;
      if (r == 0) {
        w.erase(w.begin() + p);
        at = p;
      }
      w.insert(w.begin() + at, block.begin(), block.end());
    } else {  // swap_units
      const Letter L = w[p], R = w[p + 1];
      const PairRule& r = rule(R.gen, L.gen);
      if (!(r.pos_ready || r.neg_ready))
        fail(errc::inconsistent, "conjugation rule for (" +
                                     p_.gen_name(R.gen) + ", " +
                                     p_.gen_name(L.gen) +
                                     ") used before derivation");
      if (r.commute) {
        std::swap(w[p], w[p + 1]);
      } else {
        int si = R.exp > 0 ? 1 : -1;
        int sj = L.exp > 0 ? 1 : -1;
        bool need_pos = si < 0;
        if (need_pos ? !r.pos_ready : !r.neg_ready)
          fail(errc::inconsistent, "conjugation rule for (" +
                                       p_.gen_name(R.gen) + ", " +
                                       p_.gen_name(L.gen) +
                                       ") used before derivation");
        // one unit of g_i crosses the whole g_j block: with W the unit
        // replacement, g_j^ej g_i^si = g_i^si W^|ej|
        const Word& W = r.w[si > 0][sj > 0];
        b.charge(static_cast<long long>(W.size()) + 2);
        Word tail = to_word(power_b(collect(W, b), abs(L.exp), b));
        Word block;
        block.reserve(tail.size() + 2);
        block.push_back({R.gen, Int(si)});
        block.insert(block.end(), tail.begin(), tail.end());
        if (R.exp != si) block.push_back({R.gen, R.exp - si});
        w.erase(w.begin() + p, w.begin() + p + 2);
        w.insert(w.begin() + p, block.begin(), block.end());
      }
    }
    hint = p > 0 ? p - 1 : 0;
  }

  NormalWord out(n_);
  int last = -1;
  for (const Letter& l : w) {
    if (l.gen <= last)
      fail(errc::inconsistent, "collection produced an unordered word");
    last = l.gen;
    out.e[l.gen] = l.exp;
  }
  return out;
}

NormalWord Collector::multiply_b(const NormalWord& a, const NormalWord& b2,
                                 Budget& b) const {
  return collect(concat(to_word(a), to_word(b2)), b);
}

NormalWord Collector::invert_b(const NormalWord& a, Budget& b) const {
  return collect(inverse(to_word(a)), b);
}

NormalWord Collector::gen(int i) const {
  if (i < 0 || i >= n_) fail(errc::usage, "generator index out of range");
  NormalWord r(n_);
  r.e[i] = 1;
  return r;
}

NormalWord Collector::normal_form(const Word& w) const {
  for (const Letter& l : w)
    if (l.gen < 0 || l.gen >= n_)
      fail(errc::usage, "letter index out of range");
  Budget b{budget_};
  return collect(w, b);
}

NormalWord Collector::multiply(const NormalWord& a, const NormalWord& b2) const {
  Budget b{budget_};
  return multiply_b(a, b2, b);
}

NormalWord Collector::invert(const NormalWord& a) const {
  Budget b{budget_};
  return invert_b(a, b);
}

NormalWord Collector::power(const NormalWord& a, const Int& e) const {
  Budget b{budget_};
  return power_b(a, e, b);
}

NormalWord Collector::power_b(const NormalWord& a, const Int& e,
                              Budget& b) const {
  NormalWord base = e < 0 ? invert_b(a, b) : a;
  Int k = abs(e);
  NormalWord acc(n_);
  NormalWord sq = base;
  while (k > 0) {
    if ((k & 1) != 0) acc = multiply_b(acc, sq, b);
    k >>= 1;
    if (k > 0) sq = multiply_b(sq, sq, b);
  }
  return acc;
}

NormalWord Collector::conjugate(const NormalWord& x, const NormalWord& y) const {
  Budget b{budget_};
  Word w = concat(to_word(x), to_word(y));
  Word xi = inverse(to_word(x));
  w.insert(w.end(), xi.begin(), xi.end());
  return collect(std::move(w), b);
}

NormalWord Collector::commutator(const NormalWord& x, const NormalWord& y) const {
  Budget b{budget_};
  Word w = inverse(to_word(x));
  Word yi = inverse(to_word(y));
  w.insert(w.end(), yi.begin(), yi.end());
  Word xw = to_word(x), yw = to_word(y);
  w.insert(w.end(), xw.begin(), xw.end());
  w.insert(w.end(), yw.begin(), yw.end());
  return collect(std::move(w), b);
}

NormalWord Collector::forward_conjugate(int i, int j) const {
  if (i < 0 || j <= i || j >= n_) fail(errc::usage, "bad conjugation pair");
  return pos_conj_[static_cast<size_t>(i) * n_ + j];
}

NormalWord Collector::inverse_conjugate(int i, int j) const {
  if (i < 0 || j <= i || j >= n_) fail(errc::usage, "bad conjugation pair");
  return neg_conj_[static_cast<size_t>(i) * n_ + j];
}

bool Collector::commutes(int i, int j) const {
  if (i < 0 || j <= i || j >= n_) fail(errc::usage, "bad conjugation pair");
  return rule(i, j).commute;
}

ConsistencyReport Collector::consistency_check() const {
  ConsistencyReport rep;
  auto fail_case = [&](const std::string& test, const std::string& where,
                       const NormalWord& lhs, const NormalWord& rhs) {
    rep.consistent = false;
    rep.violations.push_back(
        {test, where + ": " + render(p_, lhs) + " != " + render(p_, rhs)});
  };

  // Power overlaps and inverse overlaps on generator pairs.
  for (int i = 0; i < n_ && rep.consistent; ++i) {
    if (p_.is_head(i)) {
      const Int& o = p_.heads[i].order;
      NormalWord gi = gen(i);
      NormalWord w_full = normal_form({Letter{i, o}});
      ++rep.checks_run;
      NormalWord lhs = multiply(gi, w_full);
      NormalWord rhs = multiply(w_full, gi);
      if (lhs != rhs) {
        fail_case("power consistency", "generator " + p_.gen_name(i), lhs, rhs);
        break;
      }
    }
    for (int j = i + 1; j < n_ && rep.consistent; ++j) {
      NormalWord gi = gen(i), gj = gen(j);
      if (p_.is_head(i)) {
        const Int& o = p_.heads[i].order;
        ++rep.checks_run;
        NormalWord lhs = multiply(gj, normal_form({Letter{i, o}}));
        NormalWord rhs =
            multiply(multiply(gj, gi), normal_form({Letter{i, o - 1}}));
        if (lhs != rhs) {
          fail_case("power overlap right",
                    "(" + p_.gen_name(j) + ", " + p_.gen_name(i) + ")", lhs,
                    rhs);
          break;
        }
      }
      if (p_.is_head(j)) {
        const Int& o = p_.heads[j].order;
        ++rep.checks_run;
        NormalWord lhs = multiply(normal_form({Letter{j, o}}), gi);
        NormalWord rhs =
            multiply(normal_form({Letter{j, o - 1}}), multiply(gj, gi));
        if (lhs != rhs) {
          fail_case("power overlap left",
                    "(" + p_.gen_name(j) + ", " + p_.gen_name(i) + ")", lhs,
                    rhs);
          break;
        }
      }
      if (!p_.is_head(i)) {
        ++rep.checks_run;
        NormalWord lhs = multiply(multiply(gj, invert(gi)), gi);
        if (lhs != gj) {
          fail_case("inverse overlap",
                    "(" + p_.gen_name(j) + ", " + p_.gen_name(i) + ")", lhs,
                    gj);
          break;
        }
      }
    }
  }

  // Associativity triples g_k (g_j g_i) = (g_k g_j) g_i, k > j > i.
  for (int i = 0; i < n_ && rep.consistent; ++i)
    for (int j = i + 1; j < n_ && rep.consistent; ++j)
      for (int k = j + 1; k < n_ && rep.consistent; ++k) {
        ++rep.checks_run;
        NormalWord lhs = multiply(gen(k), multiply(gen(j), gen(i)));
        NormalWord rhs = multiply(multiply(gen(k), gen(j)), gen(i));
        if (lhs != rhs)
          fail_case("associativity",
                    "(" + p_.gen_name(k) + ", " + p_.gen_name(j) + ", " +
                        p_.gen_name(i) + ")",
                    lhs, rhs);
      }

  return rep;
}

}  // namespace afspin
