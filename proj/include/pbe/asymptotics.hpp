#pragma once

#include <vector>

#include "pbe/expr.hpp"
#include "pbe/rational.hpp"

namespace pbe {

// a_k of the Hankel expansion J0(x) ~ (2/(pi x))^{1/2} (A cos chi - B sin chi),
// chi = x - pi/4, A = sum_{k even} a_k x^{-k}, B = sum_{k odd} a_k x^{-k}.
// |a_k| = prod_{j<=k} (2j-1)^2 / (k! 8^k); signs +, -, -, +, repeating.
Rational hankel_coeff(int k);

// (k+1/2)^2 |a_k| x^{-(k+1/2)}, optionally times |cos chi| (k even) or
// |sin chi| (k odd).
double residual_term_magnitude(int k, double x, bool trig_factor = false);

// Signed residual x^2 y'' + x y' + x^2 y of the partial sum through a_k.
double residual_term(int k, double x);

struct TruncationTable {
  int k_star = 0;
  std::vector<double> magnitudes;
};

// Argmin over 0..k_max, ties toward the smaller k.
TruncationTable optimal_truncation(double x, bool trig_factor, int k_max = 25);

double hankel_partial_sum(double x, int k);

// Partial sum as an expression in variable "x".
Expr hankel_partial_sum_expr(int k);

// (1/pi) int_0^pi cos(x sin theta) d theta by adaptive Gauss-Kronrod.
double bessel_j0_oracle(double x, double tol = 1e-12);

}  // namespace pbe
