#include "pbe/asymptotics.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "pbe/errors.hpp"

namespace pbe {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

void check_k(int k) {
  if (k < 0) fail(ErrorCode::kPrecondition, "truncation index must be >= 0");
}

}  // namespace

Rational hankel_coeff(int k) {
  check_k(k);
  Rational mag(1);
  for (int j = 1; j <= k; ++j) mag *= Rational((2 * j - 1) * (2 * j - 1), 8 * j);
  return (k % 4 == 1 || k % 4 == 2) ? -mag : mag;
}

double residual_term_magnitude(int k, double x, bool trig_factor) {
  check_k(k);
  if (!(x > 0)) fail(ErrorCode::kPrecondition, "x must be positive");
  double kh = k + 0.5;
  double m = kh * kh * abs(hankel_coeff(k)).to_double() * std::pow(x, -kh);
  if (trig_factor) {
    double chi = x - kPi / 4;
    m *= std::abs(k % 2 == 0 ? std::cos(chi) : std::sin(chi));
  }
  return m;
}

double residual_term(int k, double x) {
  check_k(k);
  double kh = k + 0.5;
  double chi = x - kPi / 4;
  double t = kh * kh * hankel_coeff(k).to_double() * std::pow(x, -kh);
  return std::sqrt(2 / kPi) * t * (k % 2 == 0 ? std::cos(chi) : -std::sin(chi));
}

TruncationTable optimal_truncation(double x, bool trig_factor, int k_max) {
  TruncationTable t;
  for (int k = 0; k <= k_max; ++k) {
    double m = residual_term_magnitude(k, x, trig_factor);
    t.magnitudes.push_back(m);
    if (m < t.magnitudes[static_cast<size_t>(t.k_star)]) t.k_star = k;
  }
  return t;
}

double hankel_partial_sum(double x, int k) {
  check_k(k);
  if (!(x > 0)) fail(ErrorCode::kPrecondition, "x must be positive");
  double a = 0, b = 0;
  for (int j = 0; j <= k; ++j) {
    double term = hankel_coeff(j).to_double() * std::pow(x, -j);
    (j % 2 == 0 ? a : b) += term;
  }
  double chi = x - kPi / 4;
  return std::sqrt(2 / (kPi * x)) * (a * std::cos(chi) - b * std::sin(chi));
}

Expr hankel_partial_sum_expr(int k) {
  check_k(k);
  Expr x = variable("x");
  Expr a = constant(Rational(0)), b = constant(Rational(0));
  for (int j = 0; j <= k; ++j) {
    Expr term = constant(hankel_coeff(j)) * pow(x, Rational(-j));
    if (j % 2 == 0) {
      a = a + term;
    } else {
      b = b + term;
    }
  }
  Expr chi = x - constant(kPi / 4);
  return sqrt(constant(2 / kPi) / x) * (a * cos(chi) - b * sin(chi));
}

double bessel_j0_oracle(double x, double tol) {
  if (x < 0) fail(ErrorCode::kPrecondition, "x must be >= 0");
  auto f = [x](double th) { return std::cos(x * std::sin(th)); };
  double err = 0;
  double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, kPi, 20, tol, &err);
  if (err > 1e-10) fail(ErrorCode::kTolerance, "quadrature error estimate above 1e-10");
  return v / kPi;
}

}  // namespace pbe
