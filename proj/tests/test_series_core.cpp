#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "pbe/gauge_series.hpp"

using namespace pbe;
using QS = GaugeSeries<Rational>;

namespace {

QS trunc(std::vector<Rational> c, int n) { return QS::truncated("mu", std::move(c), n); }
QS ex(std::vector<Rational> c) { return QS::exact("mu", std::move(c)); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kTolerance;
}

}  // namespace

TEST_CASE("series_mul examples") {
  CHECK(series_mul(trunc({1, 1}, 2), trunc({1, -1}, 2)) == trunc({1, 0, -1}, 2));
  CHECK(series_mul(trunc({1, 1, 1}, 2), QS(Rational(1))) == trunc({1, 1, 1}, 2));
  CHECK(series_mul(trunc({1, 1, 1, 1, 1, 1}, 5), trunc({1, -1}, 5)) == trunc({1}, 5));
  CHECK((ex({1, 1}) * ex({1, -1})).is_exact());
  CHECK(ex({1, 1}) * ex({1, -1}) == ex({1, 0, -1}));
  CHECK((trunc({1, 1}, 3) * ex({0, 0, 1})).order() == 5);
  CHECK((trunc({1, 1}, 3) * trunc({0, 1}, 2)).order() == 2);
}

TEST_CASE("series_div examples") {
  CHECK(series_div(QS(Rational(1)), trunc({1, -1}, 3)) == trunc({1, 1, 1, 1}, 3));
  CHECK(series_div(trunc({0, 1}, 3), trunc({1, -1}, 3)) == trunc({0, 1, 1, 1}, 3));
  CHECK(series_div(ex({0, 1}), ex({1, -1}), 3) == trunc({0, 1, 1, 1}, 3));
  CHECK(code_of([] { series_div(trunc({1}, 3), trunc({0, 1}, 3) - trunc({0, 1}, 3)); }) ==
        ErrorCode::kNotAUnit);
  CHECK(code_of([] { series_div(ex({1}), ex({1, 1})); }) == ErrorCode::kPrecondition);
  // A leading mu factor in the divisor shifts the quotient down.
  QS q = series_div(trunc({1}, 4), trunc({0, 1, 1}, 4));
  CHECK(q.low() == -1);
  CHECK(q.coeff(-1) == Rational(1));
  CHECK(q.coeff(0) == Rational(-1));
}

TEST_CASE("series_exp and series_log examples") {
  CHECK(series_log(trunc({1, 1}, 3)) == trunc({0, 1, Rational(-1, 2), Rational(1, 3)}, 3));
  CHECK(series_exp(QS(), 4) == trunc({1}, 4));
  CHECK(series_exp(series_log(trunc({1, 1, 1}, 4))) == trunc({1, 1, 1}, 4));
  CHECK(code_of([] { series_exp(trunc({1, 1}, 3)); }) == ErrorCode::kPrecondition);
  CHECK(code_of([] { series_log(trunc({2, 1}, 3)); }) == ErrorCode::kPrecondition);
}

TEST_CASE("series_coeff examples") {
  CHECK(series_coeff(ex({1, 2}), 1) == Rational(2));
  CHECK(series_coeff(trunc({1, 2}, 1), 1) == Rational(2));
  CHECK(code_of([] { series_coeff(trunc({1, 2, 3}, 2), 3); }) == ErrorCode::kOrderExceeded);
  CHECK(series_coeff(ex({1, 2}), 7) == Rational(0));
}

TEST_CASE("gauge_refine examples") {
  QS eps_series = QS::exact("eps", {1, 1});
  QS r = gauge_refine(eps_series, 4);
  CHECK(r.denominator() == 4);
  CHECK(r == QS::exact("eps", {1, 0, 0, 0, 1}, 4));
  CHECK(gauge_coarsen(r, 4) == eps_series);
  QS t = trunc({1, 2, 3}, 2);
  CHECK(gauge_coarsen(gauge_refine(t, 3), 3) == t);
  CHECK(gauge_refine(t, 3).order() == 6);
  CHECK(code_of([] { gauge_coarsen(QS::exact("mu", {1, 1}, 2), 2); }) == ErrorCode::kCoarsen);
  // Mixed gauges meet at the lcm.
  QS a = QS::exact("mu", {0, 1}, 2), b = QS::exact("mu", {0, 1}, 3);
  QS s = a + b;
  CHECK(s.denominator() == 6);
  CHECK(s.coeff(3) == Rational(1));
  CHECK(s.coeff(2) == Rational(1));
}

TEST_CASE("truncation bookkeeping, random") {
  for (int trial = 0; trial < 200; ++trial) {
    int na = gen::uniform(0, 8), nb = gen::uniform(0, 8);
    QS a = gen::series(na), b = gen::series(nb);
    QS p = series_mul(a, b);
    int n = std::min(na, nb);
    REQUIRE(p.order() == n);
    for (int k = 0; k <= n; ++k) {
      Rational c;
      for (int i = 0; i <= k; ++i) c += a.coeff(i) * b.coeff(k - i);
      REQUIRE(series_coeff(p, k) == c);
    }
    REQUIRE_THROWS_AS(series_coeff(p, n + 1), Error);
  }
}

TEST_CASE("round-trip identities, 200 random inputs") {
  for (int trial = 0; trial < 200; ++trial) {
    int n = gen::uniform(0, 8);
    QS a = gen::series(n), b = gen::series(n, true);
    REQUIRE(series_div(a, b) * b == a);
    REQUIRE(series_div(b, b) == QS::truncated("mu", {1}, n));
    QS z = a - QS(a.coeff(0));
    REQUIRE(series_log(series_exp(z)) == z);
    QS one_plus = z + QS(Rational(1));
    REQUIRE(series_exp(series_log(one_plus)) == one_plus);
  }
}

TEST_CASE("gauge_refine preserves evaluation") {
  for (int trial = 0; trial < 50; ++trial) {
    int n = gen::uniform(0, 6);
    QS a = gen::series(n).as_exact();
    int d = gen::uniform(1, 4);
    Rational mu0 = gen::nonzero_rational(5);
    auto id = [](const Rational& c) { return c; };
    Rational before = a.evaluate(pow(mu0, d), id);
    Rational after = gauge_refine(a, d).evaluate(mu0, id);
    REQUIRE(before == after);
  }
}

TEST_CASE("laurent terms") {
  QS z = QS::exact("mu", {1, 2}, 1, -1);  // 1/mu + 2
  QS sq = z * z;
  CHECK(sq.low() == -2);
  CHECK(sq.coeff(-2) == Rational(1));
  CHECK(sq.coeff(-1) == Rational(4));
  CHECK(sq.coeff(0) == Rational(4));
  QS t = QS::truncated("mu", {1, 2, 0}, 1, 1, -1);
  CHECK((t * QS::monomial("mu", 4)).order() == 5);
  CHECK((t * t).order() == 0);
}
