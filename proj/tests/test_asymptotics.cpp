#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pbe/asymptotics.hpp"

using namespace pbe;

TEST_CASE("hankel_coeff") {
  CHECK(hankel_coeff(0) == Rational(1));
  CHECK(hankel_coeff(1) == Rational(-1, 8));
  CHECK(hankel_coeff(2) == Rational(-9, 128));
  CHECK(hankel_coeff(3) == Rational(75, 1024));
  CHECK(abs(hankel_coeff(4)) == Rational(11025, 98304));
  CHECK(hankel_coeff(4).sign() > 0);
  CHECK(hankel_coeff(5).sign() < 0);
  CHECK(hankel_coeff(6).sign() < 0);
  CHECK(hankel_coeff(7).sign() > 0);
}

TEST_CASE("residual table at x = 2.3") {
  const double want[] = {0.165, 0.081, 0.055, 0.049, 0.054, 0.070};
  for (int k = 0; k <= 5; ++k)
    CHECK(std::abs(residual_term_magnitude(k, 2.3) - want[k]) <= 0.001);
  double prev = residual_term_magnitude(0, 1.0);
  for (double x = 2.0; x < 1e6; x *= 3) {
    double m = residual_term_magnitude(0, x);
    CHECK(m < prev);
    prev = m;
  }
}

TEST_CASE("optimal_truncation at x = 2.3") {
  auto plain = optimal_truncation(2.3, false);
  auto trig = optimal_truncation(2.3, true);
  CHECK(plain.k_star == 3);
  CHECK(trig.k_star == 4);
  CHECK(plain.magnitudes.size() == 26);
  // Stopping before the smallest term keeps a_5; a_4 gives the better answer.
  double j0 = bessel_j0_oracle(2.3);
  CHECK(std::abs(hankel_partial_sum(2.3, 4) - j0) < std::abs(hankel_partial_sum(2.3, 5) - j0));
}

TEST_CASE("partial sums and the oracle") {
  CHECK(std::abs(hankel_partial_sum(2.3, 3) - 0.05454) <= 5e-5);
  double j0 = bessel_j0_oracle(2.3);
  CHECK(std::abs(j0 - 0.0555398) <= 1e-6);
  CHECK(std::abs(std::abs(hankel_partial_sum(2.3, 4) - j0) - 8.8e-4) <= 1e-4);
  CHECK(std::abs(hankel_partial_sum(50.0, 3) - bessel_j0_oracle(50.0)) <= 1e-6);
  CHECK(bessel_j0_oracle(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  // First zero by bisection.
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (bessel_j0_oracle(mid) > 0 ? lo : hi) = mid;
  }
  CHECK(std::abs(lo - 2.404826) < 1e-6);
}

TEST_CASE("divergence witness") {
  for (double x : {2.3, 5.0, 10.0}) {
    auto t = optimal_truncation(x, false);
    for (int k = 0; k < t.k_star; ++k) CHECK(t.magnitudes[k + 1] <= t.magnitudes[k]);
    for (int k = t.k_star; k < 25; ++k) CHECK(t.magnitudes[k + 1] >= t.magnitudes[k]);
  }
  double prev = 0;
  for (int k = 0; k < 25; ++k) {
    double ratio = (abs(hankel_coeff(k + 1)) / abs(hankel_coeff(k))).to_double();
    CHECK(ratio > prev);
    prev = ratio;
  }
  CHECK(prev > 10);
}

TEST_CASE("residual formula matches differentiation of the partial sum") {
  for (int k = 0; k <= 4; ++k) {
    Expr y = hankel_partial_sum_expr(k);
    Expr y1 = expr_diff(y, "x");
    Expr y2 = expr_diff(y1, "x");
    Expr x = variable("x");
    Tape op(pow(x, Rational(2)) * y2 + x * y1 + pow(x, Rational(2)) * y, {"x"});
    Tape ys(y, {"x"});
    for (int i = 0; i < 20; ++i) {
      double xv = 2.0 + 8.0 * i / 19.0;
      CHECK(ys({xv}) == doctest::Approx(hankel_partial_sum(xv, k)).epsilon(1e-13));
      double want = residual_term(k, xv);
      REQUIRE(std::abs(op({xv}) - want) <= 1e-8 * std::abs(want) + 1e-13);
    }
  }
}

TEST_CASE("oracle agreement in the asymptotic regime") {
  for (double x = 6.0; x <= 40.0; x += 0.5) {
    int k = optimal_truncation(x, false).k_star;
    REQUIRE(std::abs(hankel_partial_sum(x, k) - bessel_j0_oracle(x)) <= residual_term_magnitude(k, x) + 1e-14);
  }
}
