#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "pbe/cyclo.hpp"
#include "pbe/poly.hpp"
#include "pbe/trig_series.hpp"

using namespace pbe;

namespace {

CycloElement alpha_pow(int n, int k, Rational c = 1) { return CycloElement::root_power(n, k, c); }

TrigSeries C(int h, RatPoly amp = RatPoly(1)) { return TrigSeries::cos_term("t", h, amp); }
TrigSeries S(int h, RatPoly amp = RatPoly(1)) { return TrigSeries::sin_term("t", h, amp); }
RatPoly t_poly(std::map<int, Rational> m) { return RatPoly("t", m); }

template <class T, class G>
void check_ring_axioms(G make, int trials) {
  for (int i = 0; i < trials; ++i) {
    T a = make(), b = make(), c = make();
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a + b == b + a);
    REQUIRE(a - a == T());
  }
}

}  // namespace

TEST_CASE("rational basics") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(6, -4).den() == 2);
  CHECK(Rational::parse("21/3125").str() == "21/3125");
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("abc"), Error);
  CHECK(binomial(36, 7) / Rational(36) == Rational(231880));
  CHECK(pow(Rational(29, 25), 5) - Rational(29, 25) - 1 == Rational(-582601, 9765625));
  try {
    (void)(Rational(1) / Rational(0));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kZeroDivisor);
  }
}

TEST_CASE("cyclo_inverse examples") {
  CHECK(cyclo_inverse(alpha_pow(5, 1)) == alpha_pow(5, 4));
  CHECK(cyclo_inverse(alpha_pow(5, 4, 5)) == alpha_pow(5, 1, Rational(1, 5)));
  try {
    cyclo_inverse(alpha_pow(5, 1) - CycloElement(1));
    FAIL("expected ZeroDivisor");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kZeroDivisor);
  }
  try {
    cyclo_inverse(CycloElement(5, {0, 0, 0, 0, 0}));
    FAIL("expected ZeroInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kZeroInput);
  }
  // 1 + alpha is a zero divisor for even n only.
  CHECK_THROWS_AS(cyclo_inverse(alpha_pow(4, 1) + 1), Error);
  CHECK(alpha_pow(5, 1) + 1 == alpha_pow(5, 0) + alpha_pow(5, 1));
  CHECK((alpha_pow(5, 1) + 1) * cyclo_inverse(alpha_pow(5, 1) + 1) == CycloElement(1));
}

TEST_CASE("cyclo reduction and promotion") {
  CHECK(alpha_pow(5, 3) * alpha_pow(5, 4) == alpha_pow(5, 2));
  CHECK(alpha_pow(4, 1) * alpha_pow(4, 1) * alpha_pow(4, 1) * alpha_pow(4, 1) == CycloElement(1));
  CHECK(CycloElement(Rational(2)) * alpha_pow(5, 1) == alpha_pow(5, 1, 2));
  CHECK_THROWS_AS(alpha_pow(5, 1) + alpha_pow(4, 1), Error);
  CHECK(alpha_pow(2, 1).lift(4) == alpha_pow(4, 2));
  auto [re, im] = project_to_gaussian(alpha_pow(4, 1, 3) + alpha_pow(4, 2) + 1);
  CHECK(re == Rational(0));
  CHECK(im == Rational(3));
}

TEST_CASE("ring axioms, 1000 trials each") {
  check_ring_axioms<Rational>([] { return gen::rational(); }, 1000);
  for (int n : {2, 4, 5}) check_ring_axioms<CycloElement>([n] { return gen::cyclo(n); }, 1000);
  check_ring_axioms<RatPoly>([] { return gen::poly("t", 4); }, 1000);
  check_ring_axioms<TrigSeries>([] { return gen::trig("t", 3, 2); }, 1000);
}

TEST_CASE("cyclo_inverse on 200 random units") {
  int done = 0;
  while (done < 200) {
    int n = gen::uniform(0, 2) == 0 ? 4 : 5;
    CycloElement a = gen::cyclo(n);
    if (!is_unit(a)) continue;
    REQUIRE(a * cyclo_inverse(a) == CycloElement(n, {1}));
    ++done;
  }
}

TEST_CASE("trig_mul examples") {
  CHECK(C(1) * C(1) == TrigSeries(Rational(1, 2)) + C(2, RatPoly(Rational(1, 2))));
  CHECK(trig_mul(trig_mul(S(1), S(1)), S(1)) ==
        S(1, RatPoly(Rational(3, 4))) - S(3, RatPoly(Rational(1, 4))));
  RatPoly t = RatPoly::variable("t");
  CHECK(S(1, t) * C(1) == S(2, t_poly({{1, Rational(1, 2)}})));
  CHECK_THROWS_AS(C(1) * TrigSeries::cos_term("tau", 1), Error);
}

TEST_CASE("trig_diff examples") {
  RatPoly t = RatPoly::variable("t");
  CHECK(trig_diff(C(1)) == -S(1));
  CHECK(trig_diff(S(1, t)) == S(1) + C(1, t));
  CHECK(trig_diff(trig_diff(C(1))) + C(1) == TrigSeries());
  CHECK(trig_diff(TrigSeries(Rational(7))) == TrigSeries());
}

TEST_CASE("trig series numeric consistency") {
  for (int trial = 0; trial < 200; ++trial) {
    TrigSeries a = gen::trig("t", 4, 2), b = gen::trig("t", 4, 2);
    TrigSeries p = trig_mul(a, b);
    TrigSeries da = trig_diff(a);
    for (int i = 0; i < 10; ++i) {
      double t = -3.0 + 0.6 * i + 0.013 * trial;
      double want = a.evaluate(t) * b.evaluate(t);
      double got = p.evaluate(t);
      REQUIRE(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)) +
                                           1e-12 * std::abs(a.evaluate(t)) * std::abs(b.evaluate(t)));
      double h = 1e-5;
      double fd = (a.evaluate(t + h) - a.evaluate(t - h)) / (2 * h);
      REQUIRE(std::abs(fd - da.evaluate(t)) <= 1e-6);
    }
  }
}

TEST_CASE("poly basics") {
  RatPoly t = RatPoly::variable("t");
  RatPoly p = t * t + RatPoly(Rational(3));
  CHECK(p.degree() == 2);
  CHECK(p.derivative() == RatPoly(2) * t);
  CHECK(p.evaluate(Rational(2)) == Rational(7));
  CHECK((p - p).is_zero());
  CHECK((p - p).degree() == -1);
  CHECK_THROWS_AS(t + RatPoly::variable("x"), Error);
}
