#include "afspin/holonomy.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "afspin/error.hpp"

namespace afspin {

namespace {

constexpr long long max_quotient_order = 4096;

Word word_of_tuple(const std::vector<Int>& t) {
  Word w;
  for (int i = 0; i < static_cast<int>(t.size()); ++i)
    if (t[i] != 0) w.push_back({i, t[i]});
  return w;
}

std::vector<Int> head_tuple(const PcPresentation& p, const NormalWord& w) {
  return std::vector<Int>(w.e.begin(), w.e.begin() + p.head_count());
}

// order of element i from the multiplication table
Int table_order(const std::vector<std::vector<int>>& table, int i) {
  Int o = 1;
  for (int at = table[0][i]; at != 0; at = table[at][i]) ++o;
  return o;
}

void check_axioms(const HolonomyGroup& h, int head_count) {
  int n = static_cast<int>(h.elements.size());
  for (int j = 0; j < n; ++j)
    if (h.table[0][j] != j || h.table[j][0] != j)
      fail(errc::inconsistent, "holonomy identity row is broken");
  // rows and columns are permutations, so inverses exist
  for (int i = 0; i < n; ++i) {
    std::vector<bool> row(n), col(n);
    for (int j = 0; j < n; ++j) {
      if (row[h.table[i][j]] || col[h.table[j][i]])
        fail(errc::inconsistent, "holonomy table is not a Latin square");
      row[h.table[i][j]] = col[h.table[j][i]] = true;
    }
  }
  // full associativity on small quotients, generator rows otherwise; the
  // latter propagates to products by induction on word length
  auto assoc = [&](int x, int y, int z) {
    if (h.table[h.table[x][y]][z] != h.table[x][h.table[y][z]])
      fail(errc::inconsistent, "holonomy multiplication is not associative");
  };
  if (n <= 128) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) assoc(x, y, z);
  } else {
    for (int g = 0; g < head_count; ++g) {
      std::vector<Int> t(head_count, 0);
      t[g] = 1;
      int gi = static_cast<int>(
          std::find(h.elements.begin(), h.elements.end(), t) -
          h.elements.begin());
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) assoc(gi, y, z);
    }
  }
}

}  // namespace

HolonomyGroup enumerate_holonomy(const Collector& c) {
  const PcPresentation& p = c.presentation();
  HolonomyGroup h;
  for (const HeadGen& g : p.heads) h.order *= g.order;
  if (h.order > max_quotient_order)
    fail(errc::holonomy, "holonomy group order exceeds " +
                             std::to_string(max_quotient_order));
  // tuples in lexicographic order, first head most significant
  std::vector<Int> cur(p.head_count(), 0);
  std::map<std::vector<Int>, int> index;
  for (;;) {
    index.emplace(cur, static_cast<int>(h.elements.size()));
    h.elements.push_back(cur);
    int at = p.head_count() - 1;
    while (at >= 0 && ++cur[at] == p.heads[at].order) cur[at--] = 0;
    if (at < 0) break;
  }
  int n = static_cast<int>(h.elements.size());
  h.table.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      NormalWord w = c.normal_form(
          concat(word_of_tuple(h.elements[i]), word_of_tuple(h.elements[j])));
      h.table[i][j] = index.at(head_tuple(p, w));
    }
  check_axioms(h, p.head_count());
  for (int i = 0; i < n; ++i)
    h.element_orders.push_back(table_order(h.table, i));

  Int odd = h.order;
  while (odd % 2 == 0) {
    odd /= 2;
    ++h.sylow2.m;
  }
  if (h.sylow2.m > 0) {
    Int target = h.order / odd;  // 2^m
    h.sylow2.cyclic = false;
    for (int i = 0; i < n; ++i)
      if (h.element_orders[i] == target) {
        h.sylow2.cyclic = true;
        h.sylow2.generator = h.elements[i];  // lex order: first hit is least
        break;
      }
  } else {
    h.sylow2.generator.assign(p.head_count(), 0);
  }
  return h;
}

PcPresentation sylow2_reduce(const Collector& c, const HolonomyGroup& h,
                             const std::optional<NormalWord>& lift_override) {
  const PcPresentation& p = c.presentation();
  if (h.sylow2.m == 0)
    fail(errc::holonomy, "trivial 2-part: nothing to reduce");
  if (!h.sylow2.cyclic)
    fail(errc::holonomy, "2-part of the holonomy group is not cyclic");
  Int target = 1;
  for (int t = 0; t < h.sylow2.m; ++t) target *= 2;

  NormalWord lift = c.identity();
  if (lift_override) {
    lift = *lift_override;
    auto it = std::find(h.elements.begin(), h.elements.end(),
                        head_tuple(p, lift));
    if (it == h.elements.end() ||
        h.element_orders[it - h.elements.begin()] != target)
      fail(errc::holonomy, "lift override does not map onto the 2-part");
  } else {
    for (int i = 0; i < p.head_count(); ++i) lift.e[i] = h.sylow2.generator[i];
  }

  PcPresentation out;
  out.name = p.name + "_s2";
  std::string head = "gs";
  while (p.gen_index(head)) head += "_";
  out.heads.push_back({head, target});
  out.lattice = p.lattice;
  out.declared_series = p.declared_series;
  // new indices: the single head is 0, lattice generator j sits at 1 + j
  auto remap = [&](const NormalWord& w) {
    Word r;
    for (int j = 0; j < p.lattice_count(); ++j) {
      const Int& e = w.e[p.head_count() + j];
      if (e != 0) r.push_back({1 + j, e});
    }
    for (int i = 0; i < p.head_count(); ++i)
      if (w.e[i] != 0)
        fail(errc::holonomy, "reduction word leaves the lattice");
    return r;
  };
  out.power_rhs[0] = remap(c.power(lift, target));
  for (int j = 0; j < p.lattice_count(); ++j) {
    NormalWord cz = c.conjugate(lift, c.gen(p.head_count() + j));
    Word rhs = remap(cz);
    if (rhs == Word{{1 + j, 1}}) continue;  // acts trivially: omit
    ConjRelation rel;
    rel.i = 0;
    rel.j = 1 + j;
    rel.dir = ConjDir::pos;
    rel.rhs = std::move(rhs);
    out.conj.emplace(std::make_pair(0, 1 + j), std::move(rel));
  }
  // lattice relations carry over with shifted indices
  for (const auto& [key, rel] : p.conj) {
    if (p.is_head(key.first)) continue;
    ConjRelation r = rel;
    r.i = key.first - p.head_count() + 1;
    r.j = key.second - p.head_count() + 1;
    for (Letter& l : r.rhs) l.gen = l.gen - p.head_count() + 1;
    out.conj.emplace(std::make_pair(r.i, r.j), std::move(r));
  }
  return out;
}

}  // namespace afspin
