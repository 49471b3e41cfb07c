#include "pbe/linalg.hpp"

namespace pbe {

Rational determinant(Matrix<Rational> a) {
  const size_t n = a.size();
  Rational det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (a[i][c].is_zero()) continue;
      Rational f = a[i][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

Matrix<Rational> inverse_matrix(const Matrix<Rational>& a, ErrorCode on_singular) {
  const size_t n = a.size();
  if (determinant(a).is_zero()) fail(on_singular, "matrix is singular");
  Matrix<Rational> inv(n, std::vector<Rational>(n));
  for (size_t k = 0; k < n; ++k) {
    std::vector<Rational> e(n);
    e[k] = 1;
    auto col = solve_linear(a, e, on_singular);
    for (size_t i = 0; i < n; ++i) inv[i][k] = col[i];
  }
  return inv;
}

}  // namespace pbe
