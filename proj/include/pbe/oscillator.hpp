#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pbe/algebraic.hpp"
#include "pbe/expr.hpp"
#include "pbe/gauge_series.hpp"
#include "pbe/trig_series.hpp"

namespace pbe {

using TrigGauge = GaugeSeries<TrigSeries>;

// Exact solution of y'' + y = forcing with y(0) = y0, y'(0) = yp0.
TrigSeries solve_oscillator(const TrigSeries& forcing, const Rational& y0, const Rational& yp0,
                            const std::string& symbol = "t");

// d/dt applied to every coefficient.
TrigGauge series_diff(const TrigGauge& z);

// Residual functional for an ODE whose order-0 operator is y'' + y.
struct OdeResidualSpec {
  std::string time_symbol = "t";
  std::function<TrigGauge(const TrigGauge&)> residual;
  Rational y0;
  Rational yp0;
};

// y'' + y + eps y^3 = 0, y(0) = 1, y'(0) = 0.
OdeResidualSpec duffing_spec();
// (1 + eps tau) theta'' + 2 eps theta' + theta = 0, theta(0) = 1, theta'(0) = 0.
OdeResidualSpec pendulum_spec();

// Regular iteration with A^{-1} = solve_oscillator and zero initial data for
// every correction.
PerturbationSolution<TrigSeries> perturb_iterate(const OdeResidualSpec& spec, const TrigSeries& z0,
                                                 int n_max);

PerturbationSolution<TrigSeries> duffing_regular(int n_max);
PerturbationSolution<TrigSeries> pendulum_regular(int n_max);

struct LindstedtSolution {
  // Coefficients y_k(tau), tau = omega t.
  TrigGauge series;
  GaugeSeries<Rational> omega;
  // omega^2 y'' + y + eps y^3 evaluated exactly in tau.
  TrigGauge tau_residual;
  std::vector<SolveRecord> diagnostics;
};

LindstedtSolution solve_lindstedt(int n_max);

// z(t) = sum eps^k y_k(omega t) expanded as a series with t-dependent
// coefficients, truncated at `order`.
TrigGauge rescale_time(const TrigGauge& y, const GaugeSeries<Rational>& omega, int order,
                       const std::string& t_symbol = "t");

// Duffing residual of the Lindstedt solution in the original t variable,
// through eps^{N+1}.
TrigGauge lindstedt_t_residual(const LindstedtSolution& sol);

struct RenormResult {
  // Coefficients of eps^k (k = 0..N) of Re L and Im L, L = log A.
  std::vector<RatPoly> re_log;
  std::vector<RatPoly> im_log;
  // Constant-in-tau parts of Im L (a constant phase shift).
  std::vector<Rational> constant_phase;
  GaugeSeries<CycloPoly> amplitude;
  GaugeSeries<CycloPoly> amplitude_log;
  // e^{Re L} cos(tau + Im L), with and without the constant phase.
  Expr closed_form;
  Expr closed_form_without_constant_phase;
};

// Renormalization of a regular solution whose coefficients are
// p_k(tau) cos tau + q_k(tau) sin tau. Variables of the closed form are
// "eps" and the solution's time symbol.
RenormResult renormalize(const PerturbationSolution<TrigSeries>& regular, int n_max);

// e^{-3 eps tau / 4} cos(tau - eps tau^2 / 4).
Expr pendulum_renorm_closed_form();

}  // namespace pbe
