#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pbe/algebraic.hpp"
#include "pbe/linalg.hpp"
#include "pbe/oscillator.hpp"

namespace pbe {

// One free parameter a: the equation gains a * multiplier * mu^mu_power * u^slot.
template <class R>
struct FitDirection {
  int slot = 0;
  int mu_power = 0;
  R multiplier = R(Rational(1));
};

template <class R>
struct BEFitSpec {
  std::vector<FitDirection<R>> basis;
  std::vector<int> orders_to_cancel;
};

template <class R>
struct BackwardErrorResult {
  std::vector<R> parameters;
  AlgebraicProblem<R> modified;
  GaugeSeries<R> original_residual;
  GaugeSeries<R> new_residual;
  // Gain in the leading residual order (0 when the residual was already zero).
  int improvement_order = 0;
};

namespace detail {

template <class R>
GaugeSeries<R> direction_value(const FitDirection<R>& dir, const GaugeSeries<R>& z) {
  return GaugeSeries<R>::monomial(z.symbol(), dir.mu_power, dir.multiplier, z.denominator()) *
         series_pow(z, dir.slot);
}

}  // namespace detail

// Chooses the basis parameters so the listed residual orders vanish, by exact
// elimination over the coefficient ring. Throws UnsolvableFit if the basis
// cannot absorb them or the leading order does not improve.
template <class R>
BackwardErrorResult<R> optimal_backward_error(const AlgebraicProblem<R>& problem,
                                              const GaugeSeries<R>& candidate, const BEFitSpec<R>& fit) {
  BackwardErrorResult<R> out;
  out.original_residual = residual_exact(problem, candidate);
  std::vector<GaugeSeries<R>> dirs;
  for (const auto& d : fit.basis) {
    if (d.slot < 0 || d.slot > problem.degree())
      fail(ErrorCode::kPrecondition, "fit direction targets a missing coefficient");
    dirs.push_back(detail::direction_value(d, candidate));
  }
  Matrix<R> m;
  std::vector<R> rhs;
  for (int k : fit.orders_to_cancel) {
    std::vector<R> row;
    for (const auto& d : dirs) row.push_back(d.coeff(k));
    m.push_back(row);
    rhs.push_back(-out.original_residual.coeff(k));
  }
  out.parameters = solve_linear(m, rhs, ErrorCode::kUnsolvableFit);
  out.modified = problem;
  for (size_t i = 0; i < fit.basis.size(); ++i) {
    const auto& d = fit.basis[i];
    auto& c = out.modified.coeffs[static_cast<size_t>(d.slot)];
    c = c + GaugeSeries<R>::monomial(candidate.symbol(), d.mu_power, out.parameters[i] * d.multiplier,
                                     candidate.denominator());
  }
  out.new_residual = residual_exact(out.modified, candidate);
  auto v0 = out.original_residual.valuation();
  auto v1 = out.new_residual.valuation();
  if (!v0) return out;
  if (v1 && *v1 <= *v0) fail(ErrorCode::kUnsolvableFit, "fit did not raise the leading residual order");
  out.improvement_order = v1 ? *v1 - *v0 : std::numeric_limits<int>::max();
  return out;
}

// sum_j coeffs[j](eps, t) * d^j y / dt^j.
struct LinearOde {
  std::string time_symbol = "tau";
  std::vector<TrigGauge> coeffs;
  TrigGauge apply(const TrigGauge& z) const;
};

// One parameter touching several derivative slots at once.
struct OdeFitDirection {
  std::vector<std::pair<int, TrigGauge>> terms;
};

// Coefficient of eps^order * t^degree * cos/sin(harmonic t).
struct FitCoordinate {
  int order = 0;
  int harmonic = 0;
  bool sine = false;
  int degree = 0;
};

struct OdeFitSpec {
  std::vector<OdeFitDirection> basis;
  std::vector<FitCoordinate> conditions;
};

struct OdeBackwardErrorResult {
  std::vector<Rational> parameters;
  LinearOde modified;
  TrigGauge original_residual;
  TrigGauge new_residual;
};

Rational coordinate(const TrigGauge& s, const FitCoordinate& c);

OdeBackwardErrorResult optimal_backward_error(const LinearOde& ode, const TrigGauge& candidate,
                                              const OdeFitSpec& fit);

// (1 + eps tau) y'' + 2 eps y' + y.
LinearOde pendulum_ode();
// eps^2 p(tau) on y'' with 2 eps^2 p'(tau) on y', p of the given degree;
// cancels the eps^2 tau^m cos(tau) coordinates.
OdeFitSpec pendulum_fit_spec(int degree = 2);
// e^{-3 eps tau/4} cos(tau - eps tau^2/4) expanded through eps^order.
TrigGauge pendulum_renorm_series(int order);

// Polynomial in x with series coefficients, index = power of x.
using SeriesPoly = std::vector<GaugeSeries<Rational>>;

struct SimultaneousResult {
  SeriesPoly product;
  SeriesPoly deviation;
  // Lowest mu power over all deviation coefficients.
  std::optional<int> deviation_order;
};

// Characteristic polynomial of multiplication by z in Q[alpha]/(alpha^n - 1),
// i.e. prod over the n roots of unity of (x - z(zeta)).
SeriesPoly norm_polynomial(const GaugeSeries<CycloElement>& z);

// leading * prod over all branch conjugates of (x - zeta), compared with the
// original equation (given as coefficients in the same gauge).
SimultaneousResult simultaneous_backward_error(const std::vector<GaugeSeries<CycloElement>>& branches,
                                               const GaugeSeries<Rational>& leading,
                                               const SeriesPoly& original);

// sum_j |deviation_j(mu)| / sum_j |original_j(mu)|.
double relative_deviation(const SimultaneousResult& r, const SeriesPoly& original, double mu);

}  // namespace pbe
