#include "afspin/smith.hpp"

namespace afspin {
namespace {

// Elementary operations applied to the work matrix and mirrored into the
// transforms. For a row op E applied on the left, u <- E*u and
// u_inv <- u_inv*E^-1; columns are symmetric.
struct Reducer {
  IntMatrix m, u, v, u_inv, v_inv;

  explicit Reducer(const IntMatrix& a)
      : m(a),
        u(IntMatrix::identity(a.rows)),
        v(IntMatrix::identity(a.cols)),
        u_inv(IntMatrix::identity(a.rows)),
        v_inv(IntMatrix::identity(a.cols)) {}

  void swap_rows(int i, int k) {
    if (i == k) return;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(i, j), m.at(k, j));
    for (int j = 0; j < u.cols; ++j) std::swap(u.at(i, j), u.at(k, j));
    for (int r = 0; r < u_inv.rows; ++r)
      std::swap(u_inv.at(r, i), u_inv.at(r, k));
  }

  void swap_cols(int j, int k) {
    if (j == k) return;
    for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, j), m.at(i, k));
    for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, j), v.at(i, k));
    for (int c = 0; c < v_inv.cols; ++c)
      std::swap(v_inv.at(j, c), v_inv.at(k, c));
  }

  // row i -= q * row k
  void add_row(int i, int k, const Int& q) {
    if (q == 0) return;
    for (int j = 0; j < m.cols; ++j) m.at(i, j) -= q * m.at(k, j);
    for (int j = 0; j < u.cols; ++j) u.at(i, j) -= q * u.at(k, j);
    for (int r = 0; r < u_inv.rows; ++r) u_inv.at(r, k) += q * u_inv.at(r, i);
  }

  // col j -= q * col k
  void add_col(int j, int k, const Int& q) {
    if (q == 0) return;
    for (int i = 0; i < m.rows; ++i) m.at(i, j) -= q * m.at(i, k);
    for (int i = 0; i < v.rows; ++i) v.at(i, j) -= q * v.at(i, k);
    for (int c = 0; c < v_inv.cols; ++c) v_inv.at(k, c) += q * v_inv.at(j, c);
  }

  void negate_row(int i) {
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = -m.at(i, j);
    for (int j = 0; j < u.cols; ++j) u.at(i, j) = -u.at(i, j);
    for (int r = 0; r < u_inv.rows; ++r) u_inv.at(r, i) = -u_inv.at(r, i);
  }
};

// Smallest nonzero |entry| in the block starting at (t, t); row-major ties.
bool find_pivot(const IntMatrix& m, int t, int& pi, int& pj) {
  bool found = false;
  Int best = 0;
  for (int i = t; i < m.rows; ++i)
    for (int j = t; j < m.cols; ++j) {
      const Int& x = m.at(i, j);
      if (x == 0) continue;
      Int ax = abs(x);
      if (!found || ax < best) {
        found = true;
        best = ax;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

std::vector<Int> SmithDecomposition::divisors() const {
  std::vector<Int> out;
  int n = std::min(d.rows, d.cols);
  for (int i = 0; i < n; ++i)
    if (d.at(i, i) != 0) out.push_back(d.at(i, i));
  return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  Reducer r(a);
  int n = std::min(a.rows, a.cols);
  int t = 0;
  for (; t < n; ++t) {
    int pi = 0, pj = 0;
    if (!find_pivot(r.m, t, pi, pj)) break;
    for (;;) {
      r.swap_rows(t, pi);
      r.swap_cols(t, pj);
      // Clear column t below the pivot, then row t to its right. Truncated
      // quotients leave remainders smaller than the pivot, so re-pivoting
      // strictly shrinks it and the loop terminates.
      for (int i = t + 1; i < r.m.rows; ++i)
        r.add_row(i, t, r.m.at(i, t) / r.m.at(t, t));
      for (int j = t + 1; j < r.m.cols; ++j)
        r.add_col(j, t, r.m.at(t, j) / r.m.at(t, t));
      bool dirty = false;
      for (int i = t + 1; i < r.m.rows && !dirty; ++i)
        dirty = r.m.at(i, t) != 0;
      for (int j = t + 1; j < r.m.cols && !dirty; ++j)
        dirty = r.m.at(t, j) != 0;
      if (!dirty) {
        // Divisor chain: pull the first non-divisible row up and repeat.
        bool fixed = true;
        for (int i = t + 1; i < r.m.rows && fixed; ++i)
          for (int j = t + 1; j < r.m.cols && fixed; ++j)
            if (r.m.at(i, j) % r.m.at(t, t) != 0) {
              r.add_row(t, i, Int(-1));
              fixed = false;
            }
        if (fixed) break;
      }
      if (!find_pivot(r.m, t, pi, pj))
        fail(errc::intlin, "pivot vanished during reduction");
    }
    if (r.m.at(t, t) < 0) r.negate_row(t);
  }
  SmithDecomposition s;
  s.u = std::move(r.u);
  s.v = std::move(r.v);
  s.u_inv = std::move(r.u_inv);
  s.v_inv = std::move(r.v_inv);
  s.d = std::move(r.m);
  s.rank = t;
  return s;
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
  IntMatrix m = a;
  int r = 0;
  for (int j = 0; j < m.cols && r < m.rows; ++j) {
    // Pick the smallest |entry| in column j at or below row r.
    int piv = -1;
    Int best = 0;
    for (int i = r; i < m.rows; ++i) {
      if (m.at(i, j) == 0) continue;
      Int ax = abs(m.at(i, j));
      if (piv < 0 || ax < best) {
        piv = i;
        best = ax;
      }
    }
    if (piv < 0) continue;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(r, c), m.at(piv, c));
    // Euclidean elimination below the pivot.
    for (;;) {
      int live = -1;
      for (int i = r + 1; i < m.rows; ++i)
        if (m.at(i, j) != 0) {
          live = i;
          break;
        }
      if (live < 0) break;
      Int q = m.at(live, j) / m.at(r, j);
      for (int c = 0; c < m.cols; ++c) m.at(live, c) -= q * m.at(r, c);
      if (m.at(live, j) != 0)
        for (int c = 0; c < m.cols; ++c) std::swap(m.at(r, c), m.at(live, c));
    }
    if (m.at(r, j) < 0)
      for (int c = 0; c < m.cols; ++c) m.at(r, c) = -m.at(r, c);
    for (int i = 0; i < r; ++i) {
      Int q = m.at(i, j) / m.at(r, j);
      if (m.at(i, j) - q * m.at(r, j) < 0) q -= 1;  // floor
      for (int c = 0; c < m.cols; ++c) m.at(i, c) -= q * m.at(r, c);
    }
    ++r;
  }
  IntMatrix out(r, m.cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
  return out;
}

IntMatrix hermite_saturate(const IntMatrix& g) {
  if (g.rows == 0) return IntMatrix(0, g.cols);
  SmithDecomposition s = smith_normal_form(g);
  // g = u_inv * d * v_inv, so the row lattice is spanned by d[i] times the
  // leading rows of v_inv; dividing the elementary divisors down to 1 leaves
  // exactly those rows.
  IntMatrix basis(s.rank, g.cols);
  for (int i = 0; i < s.rank; ++i)
    for (int j = 0; j < g.cols; ++j) basis.at(i, j) = s.v_inv.at(i, j);
  return hermite_normal_form(basis);
}

std::optional<std::vector<Int>> membership_solve(const IntMatrix& b,
                                                 const std::vector<Int>& v) {
  if (static_cast<int>(v.size()) != b.cols)
    fail(errc::intlin, "dimension mismatch in membership_solve");
  if (b.rows == 0) {
    for (const Int& x : v)
      if (x != 0) return std::nullopt;
    return std::vector<Int>{};
  }
  SmithDecomposition s = smith_normal_form(b);
  std::vector<Int> w = apply_row(v, s.v);
  std::vector<Int> y(b.rows);
  for (int j = 0; j < b.cols; ++j) {
    Int dj = (j < std::min(b.rows, b.cols)) ? s.d.at(j, j) : Int(0);
    if (dj == 0) {
      if (w[j] != 0) return std::nullopt;
    } else {
      if (w[j] % dj != 0) return std::nullopt;
      y[j] = w[j] / dj;
    }
  }
  return apply_row(y, s.u);
}

}  // namespace afspin
