#pragma once

#include <map>
#include <string>
#include <vector>

#include "pbe/expr.hpp"
#include "pbe/gauge_series.hpp"
#include "pbe/trig_series.hpp"

namespace pbe {

struct ResidualReport {
  std::vector<double> grid;
  std::vector<double> residual_values;
  std::vector<double> scale_values;
  double max_abs = 0.0;
  double max_scaled = 0.0;
  std::map<std::string, double> metadata;
};

std::vector<double> uniform_grid(double a, double b, size_t n);

// Evaluate a one-variable tape at every grid point.
void eval_grid_serial(const Tape& tape, const std::vector<double>& grid, std::vector<double>& out);
void eval_grid_parallel(const Tape& tape, const std::vector<double>& grid, std::vector<double>& out);

// Residual and scale are expressions in `var`.
ResidualReport residual_report(const Expr& residual, const Expr& scale, const std::string& var,
                               const std::vector<double>& grid, bool parallel = true);

// Closed forms as expression trees.
Expr to_expr(const RatPoly& p, const Expr& var);
Expr to_expr(const TrigSeries& s, const Expr& t);
Expr to_expr(const GaugeSeries<TrigSeries>& s, const Expr& eps, const Expr& t);

// f(x) = 1 + x + eps sech(x/eps).
struct HyperasymptoticRoot {
  double x = 0.0;
  double residual = 0.0;
  // -eps W^3 / (4 + W^2), W = W(2 e^{-1/eps}); order 0 only.
  double closed_form_residual = 0.0;
};

HyperasymptoticRoot hyperasymptotic_root(double eps, int order);

// Least-squares slope of ln|Delta_order| against 1/eps.
double hyperasymptotic_slope(int order, const std::vector<double>& eps_values);

// Multiple-scales solution of z'' + z + eps z'^3 + 3 eps^2 z' = 0.
Expr morrison_solution(double eps, double a0);
Expr morrison_amplitude(double eps, double a0);
ResidualReport morrison_audit(double eps, double a0, double t_end, size_t grid_size = 2000);

enum class PendulumForm { kRegular, kRenorm, kModified };

// (1 + eps tau) z'' + 2 eps z' + z on [0, tau_end].
ResidualReport pendulum_audit(double eps, double tau_end, size_t grid_size, PendulumForm which);

// g(eps) with Delta = g(eps) z(t) for the delay equation.
GaugeSeries<Rational> dde_residual_series(const Rational& a, const Rational& b, int n);

}  // namespace pbe
