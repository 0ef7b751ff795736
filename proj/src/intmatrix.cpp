#include "afspin/intmatrix.hpp"

#include <sstream>

namespace afspin {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      fail(errc::intlin, "ragged row list");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Int> IntMatrix::row(int i) const {
  return std::vector<Int>(a.begin() + static_cast<size_t>(i) * cols,
                          a.begin() + static_cast<size_t>(i + 1) * cols);
}

bool IntMatrix::is_identity() const {
  if (rows != cols) return false;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  for (const Int& x : a)
    if (x != 0) return false;
  return true;
}

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) fail(errc::intlin, "dimension mismatch in multiply");
  IntMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

IntMatrix power(const IntMatrix& x, const Int& e) {
  if (x.rows != x.cols) fail(errc::intlin, "power of non-square matrix");
  if (e < 0) fail(errc::intlin, "negative matrix power");
  IntMatrix acc = IntMatrix::identity(x.rows);
  IntMatrix base = x;
  Int k = e;
  while (k > 0) {
    if ((k & 1) != 0) acc = multiply(acc, base);
    k >>= 1;
    if (k > 0) base = multiply(base, base);
  }
  return acc;
}

Int trace(const IntMatrix& x) {
  if (x.rows != x.cols) fail(errc::intlin, "trace of non-square matrix");
  Int t = 0;
  for (int i = 0; i < x.rows; ++i) t += x.at(i, i);
  return t;
}

// Bareiss: fraction-free Gaussian elimination; every division is exact.
Int det(const IntMatrix& x) {
  if (x.rows != x.cols) fail(errc::intlin, "det of non-square matrix");
  int n = x.rows;
  if (n == 0) return 1;
  IntMatrix m = x;
  Int sign = 1;
  Int prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) =
            (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

std::vector<Int> apply_row(const std::vector<Int>& v, const IntMatrix& m) {
  if (static_cast<int>(v.size()) != m.rows)
    fail(errc::intlin, "dimension mismatch in apply_row");
  std::vector<Int> r(m.cols);
  for (int i = 0; i < m.rows; ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < m.cols; ++j) r[j] += v[i] * m.at(i, j);
  }
  return r;
}

std::string to_string(const IntMatrix& x) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < x.rows; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < x.cols; ++j) os << (j ? ", " : "") << x.at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace afspin
