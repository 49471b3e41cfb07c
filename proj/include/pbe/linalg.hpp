#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pbe/errors.hpp"
#include "pbe/rational.hpp"

namespace pbe {

template <class R>
using Matrix = std::vector<std::vector<R>>;

// Solves A x = b by Gaussian elimination over a ring, pivoting on the first
// unit in each column. Rectangular systems are allowed: free unknowns are set
// to zero. Throws `on_fail` when no consistent solution is found this way.
template <class R>
std::vector<R> solve_linear(Matrix<R> a, std::vector<R> b, ErrorCode on_fail) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  if (b.size() != rows) fail(ErrorCode::kPrecondition, "right-hand side length mismatch");
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && !is_unit(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    R inv = inverse(a[r][c]);
    for (size_t j = c; j < cols; ++j) a[r][j] = inv * a[r][j];
    b[r] = inv * b[r];
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(a[i][c])) continue;
      R f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
      b[i] = b[i] - f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i) {
    bool zero_row = true;
    for (size_t j = 0; j < cols; ++j) zero_row = zero_row && is_zero(a[i][j]);
    if (!zero_row || !is_zero(b[i]))
      fail(on_fail, "linear system has no solution by unit-pivot elimination");
  }
  std::vector<R> x(cols);
  for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

// Exact determinant over Q.
Rational determinant(Matrix<Rational> a);
// Exact inverse over Q; throws `on_singular` when det = 0.
Matrix<Rational> inverse_matrix(const Matrix<Rational>& a, ErrorCode on_singular);

}  // namespace pbe
