#pragma once
#include <string>
#include <vector>

#include "afspin/bigint.hpp"

namespace afspin {

// Dense matrix over arbitrary-precision integers. Dimensions stay in single
// digits for every caller in this project, so the layout is kept simple.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;  // row-major

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

  Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }

  std::vector<Int> row(int i) const;
  bool is_identity() const;
  bool is_zero() const;
  bool operator==(const IntMatrix&) const = default;
};

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y);
IntMatrix power(const IntMatrix& x, const Int& e);  // e >= 0
Int trace(const IntMatrix& x);
Int det(const IntMatrix& x);  // Bareiss, fraction free

// v * m for a row vector v.
std::vector<Int> apply_row(const std::vector<Int>& v, const IntMatrix& m);

std::string to_string(const IntMatrix& x);

}  // namespace afspin
