#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pbe/backward_error.hpp"

using namespace pbe;
using QS = GaugeSeries<Rational>;
using CS = GaugeSeries<CycloElement>;

namespace {

Rational q(long a, long b = 1) { return Rational(a, b); }
CycloElement al(int k, Rational c = 1) { return CycloElement::root_power(4, k, c); }
TrigSeries Ct(std::map<int, Rational> m) { return TrigSeries::cos_term("tau", 1, RatPoly("tau", std::move(m))); }
TrigSeries St(std::map<int, Rational> m) { return TrigSeries::sin_term("tau", 1, RatPoly("tau", std::move(m))); }

AlgebraicProblem<CycloElement> singular_refined() {
  return refine_problem(make_problem<CycloElement>("eps", {{-1}, {-1}, {}, {}, {}, {0, 1}}), 4);
}

CS z5() {
  auto p = make_problem<CycloElement>("eps", {{-1}, {-1}, {}, {}, {}, {0, 1}});
  return solve_puiseux(p, 4, -1, al(1), 5).series;
}

BEFitSpec<CycloElement> quintic_fit() {
  BEFitSpec<CycloElement> fit;
  for (int j = 10; j <= 15; ++j) fit.basis.push_back({5, j, CycloElement(1)});
  for (int k = 5; k <= 10; ++k) fit.orders_to_cancel.push_back(k);
  return fit;
}

SeriesPoly quintic_original() {
  SeriesPoly o(6);
  o[5] = QS::exact("eps", {0, 0, 0, 0, 1}, 4);
  o[1] = QS::exact("eps", {-1}, 4);
  o[0] = QS::exact("eps", {-1}, 4);
  return o;
}

}  // namespace

TEST_CASE("optimal_backward_error: quintic singular branch") {
  auto prob = singular_refined();
  auto res = optimal_backward_error(prob, z5(), quintic_fit());
  const auto& a = res.parameters;
  CHECK(a[0] == al(2, q(-23205, 16384)));
  CHECK(a[1] == al(1, q(2145, 1024)));
  CHECK(a[2] == CycloElement(q(-6241665, 2097152)));
  CHECK(a[3] == al(3, q(1108895, 262144)));
  CHECK(a[4] == al(2, q(-12687295, 2097152)));
  CHECK(a[5] == al(1, q(292115295, 33554432)));
  CHECK(res.original_residual.valuation() == 5);
  CHECK(res.new_residual.valuation() == 11);
  CHECK(res.new_residual.coeff(11) == al(1, q(12165535425, 1073741824)));
  CHECK(res.new_residual.coeff(12) == CycloElement(q(-1535565415, 4294967296)));
  CHECK(res.improvement_order == 6);
  // The modified equation minus the fitted correction gives back the original residual.
  CS correction;
  for (size_t i = 0; i < a.size(); ++i)
    correction = correction + CS::monomial("eps", 10 + static_cast<int>(i), a[i], 4) * series_pow(z5(), 5);
  CHECK(res.new_residual - correction == res.original_residual);
}

TEST_CASE("optimal_backward_error: only two parameters") {
  BEFitSpec<CycloElement> fit;
  fit.basis = {{5, 10, CycloElement(1)}, {5, 11, CycloElement(1)}};
  fit.orders_to_cancel = {5, 6};
  auto res = optimal_backward_error(singular_refined(), z5(), fit);
  CHECK(res.parameters[0] == al(2, q(-23205, 16384)));
  CHECK(res.parameters[1] == al(1, q(2145, 1024)));
  CHECK(res.new_residual.valuation() == 7);
}

TEST_CASE("optimal_backward_error: zero residual and unsolvable basis") {
  auto lin = make_problem<Rational>("eps", {{0, -1}, {1}});
  BEFitSpec<Rational> fit{{{0, 2, Rational(1)}}, {2}};
  auto res = optimal_backward_error(lin, QS::exact("eps", {0, 1}), fit);
  CHECK(res.parameters[0].is_zero());
  CHECK(res.new_residual.is_zero_series());

  auto quint = make_problem<Rational>("eps", {{-1}, {0, -1}, {}, {}, {}, {1}});
  QS z = perturb_iterate(quint, Rational(1), 3).series;
  BEFitSpec<Rational> bad{{{0, 6, Rational(1)}}, {5}};
  try {
    optimal_backward_error(quint, z, bad);
    FAIL("expected UnsolvableFit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsolvableFit);
  }
}

TEST_CASE("residual sign convention: z solves F(u) - r = 0") {
  auto quint = make_problem<Rational>("eps", {{-1}, {0, -1}, {}, {}, {}, {1}});
  QS z = QS::exact("eps", {1, q(1, 5), q(-1, 25)});
  QS r = residual_exact(quint, z);
  auto shifted = quint;
  shifted.coeffs[0] = shifted.coeffs[0] - r;
  CHECK(residual_exact(shifted, z).is_zero_series());
}

TEST_CASE("pendulum renormalized residual and structured fit") {
  LinearOde ode = pendulum_ode();
  TrigGauge z = pendulum_renorm_series(3);
  TrigGauge r = ode.apply(z);
  CHECK(r.coeff(0).is_zero());
  CHECK(r.coeff(1).is_zero());
  CHECK(r.coeff(2) == Ct({{2, q(3, 4)}, {0, q(-15, 16)}}) + St({{1, q(9, 4)}}));
  CHECK(r.coeff(3) == St({{4, q(12, 64)}, {2, q(-171, 64)}}) + Ct({{3, q(-88, 64)}, {1, q(81, 64)}}));

  auto fit = optimal_backward_error(ode, z, pendulum_fit_spec());
  CHECK(fit.parameters == std::vector<Rational>{q(-15, 16), 0, q(3, 4)});
  CHECK(fit.new_residual.coeff(2) == St({{1, q(-3, 4)}}));
  CHECK(fit.new_residual.coeff(3) ==
        Ct({{3, q(11, 16)}, {1, q(-21, 8)}}) + St({{2, q(45, 16)}, {0, q(-15, 8)}}));
  // Secular degree of the leading residual drops from 2 to 1.
  CHECK(r.coeff(2).amplitude_degree() == 2);
  CHECK(fit.new_residual.coeff(2).amplitude_degree() == 1);
}

TEST_CASE("norm_polynomial of simple elements") {
  // alpha in Q[alpha]/(alpha^4 - 1): prod (x - zeta) = x^4 - 1.
  SeriesPoly p = norm_polynomial(CS::exact("mu", {al(1)}));
  CHECK(p.size() == 5);
  CHECK(p[4] == QS(Rational(1)));
  CHECK(p[0] == QS(Rational(-1)));
  for (int j = 1; j <= 3; ++j) CHECK(p[static_cast<size_t>(j)].is_zero_series());
  // Exact factorization: (x - 2)(x - 3) against x^2 - 5x + 6.
  SeriesPoly orig{QS(Rational(6)), QS(Rational(-5)), QS(Rational(1))};
  auto r = simultaneous_backward_error({CS(CycloElement(2)), CS(CycloElement(3))}, QS(Rational(1)), orig);
  CHECK(!r.deviation_order);
}

TEST_CASE("simultaneous backward error of the quintic") {
  auto sing = z5();
  auto reg = perturb_iterate(make_problem<Rational>("eps", {{-1}, {-1}, {}, {}, {}, {0, 1}}), Rational(-1), 2);
  CS reg4 = gauge_refine(reg.series, 4).map([](const Rational& c) { return CycloElement(c); });
  CHECK(reg4 == CS::exact("eps", {-1, 0, 0, 0, -1, 0, 0, 0, -5}, 4));
  QS mu4 = QS::exact("eps", {0, 0, 0, 0, 1}, 4);
  SeriesPoly orig = quintic_original();
  auto r = simultaneous_backward_error({sing, reg4}, mu4, orig);
  const auto& p = r.product;
  REQUIRE(p.size() == 6);
  CHECK(p[5] == mu4);
  CHECK(p[4] == QS::exact("eps", std::vector<Rational>{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 5}, 4));
  CHECK(p[3].coeff(8) == q(-23205, 16384));
  CHECK(p[3].coeff(12) == q(-45, 8));
  CHECK(p[3].coeff(16) == q(-5));
  CHECK(p[2].coeff(8) == q(45435, 32768));
  CHECK(p[1].coeff(0) == q(-1));
  CHECK(p[1].coeff(8) == q(-2575665, 2097152));
  CHECK(p[0].coeff(0) == q(-1));
  CHECK(p[0].coeff(8) == q(-8453745, 2097152));
  CHECK(r.deviation_order == 8);
  CHECK(r.deviation[0].coeff(8) == q(-8453745, 2097152));

  // Each branch is an exact root of the product polynomial.
  for (const CS& z : {sing, reg4}) {
    CS acc;
    for (size_t j = p.size(); j-- > 0;)
      acc = acc * z + p[j].map([](const Rational& c) { return CycloElement(c); });
    CHECK(acc.is_zero_series());
  }

  try {
    simultaneous_backward_error({sing, reg.series.map([](const Rational& c) { return CycloElement(c); })}, mu4, orig);
    FAIL("expected GaugeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kGaugeMismatch);
  }
}
