#include "pbe/audit.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pbe/backward_error.hpp"
#include "pbe/oscillator.hpp"

namespace pbe {

std::vector<double> uniform_grid(double a, double b, size_t n) {
  if (n < 2) fail(ErrorCode::kPrecondition, "grid needs at least two points");
  std::vector<double> g(n);
  for (size_t i = 0; i < n; ++i) g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  g.back() = b;
  return g;
}

void eval_grid_serial(const Tape& tape, const std::vector<double>& grid, std::vector<double>& out) {
  out.resize(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) out[i] = tape.eval(&grid[i]);
}

void eval_grid_parallel(const Tape& tape, const std::vector<double>& grid, std::vector<double>& out) {
  out.resize(grid.size());
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[static_cast<size_t>(i)] = tape.eval(&grid[static_cast<size_t>(i)]);
}

ResidualReport residual_report(const Expr& residual, const Expr& scale, const std::string& var,
                               const std::vector<double>& grid, bool parallel) {
  ResidualReport r;
  r.grid = grid;
  Tape res(residual, {var}), sc(scale, {var});
  auto kernel = parallel ? eval_grid_parallel : eval_grid_serial;
  kernel(res, grid, r.residual_values);
  kernel(sc, grid, r.scale_values);
  for (size_t i = 0; i < grid.size(); ++i) {
    r.max_abs = std::max(r.max_abs, std::abs(r.residual_values[i]));
    r.max_scaled = std::max(r.max_scaled, std::abs(r.residual_values[i]) / std::abs(r.scale_values[i]));
  }
  return r;
}

Expr to_expr(const RatPoly& p, const Expr& var) {
  Expr out = constant(Rational(0));
  for (const auto& [k, c] : p.terms()) out = out + constant(c) * pow(var, Rational(k));
  return out;
}

Expr to_expr(const TrigSeries& s, const Expr& t) {
  Expr out = constant(Rational(0));
  for (const auto& [h, hm] : s.terms()) {
    if (h == 0) {
      out = out + to_expr(hm.cos_amp, t);
      continue;
    }
    Expr arg = constant(Rational(h)) * t;
    if (!hm.cos_amp.is_zero()) out = out + to_expr(hm.cos_amp, t) * cos(arg);
    if (!hm.sin_amp.is_zero()) out = out + to_expr(hm.sin_amp, t) * sin(arg);
  }
  return out;
}

Expr to_expr(const GaugeSeries<TrigSeries>& s, const Expr& eps, const Expr& t) {
  Expr out = constant(Rational(0));
  if (s.is_zero_series()) return out;
  for (int k = s.low(); k <= s.order(); ++k) {
    const TrigSeries c = s.coeff(k);
    if (c.is_zero()) continue;
    out = out + to_expr(c, t) * pow(eps, Rational(k, s.denominator()));
  }
  return out;
}

namespace {

using Big = boost::multiprecision::cpp_bin_float_100;

Big hyper_f(const Big& x, const Big& eps) {
  using boost::multiprecision::exp;
  Big s = x / eps;
  return Big(1) + x + eps * Big(2) / (exp(s) + exp(-s));
}

Big hyper_fprime(const Big& x, const Big& eps) {
  using boost::multiprecision::exp;
  Big s = x / eps;
  Big ep = exp(s), em = exp(-s);
  Big sech = Big(2) / (ep + em);
  Big tanh = (ep - em) / (ep + em);
  return Big(1) - sech * tanh;
}

}  // namespace

HyperasymptoticRoot hyperasymptotic_root(double eps_d, int order) {
  if (!(eps_d > 0.0 && eps_d <= 1.0)) fail(ErrorCode::kPrecondition, "eps must lie in (0, 1]");
  if (order != 0 && order != 1) fail(ErrorCode::kPrecondition, "order must be 0 or 1");
  using boost::multiprecision::exp;
  const Big eps(eps_d);
  const Big w = lambert_w(Big(2) * exp(-Big(1) / eps));
  Big x = Big(-1) - eps * w;
  HyperasymptoticRoot out;
  out.closed_form_residual = static_cast<double>(-eps * w * w * w / (Big(4) + w * w));
  if (order == 1) x -= hyper_f(x, eps) / hyper_fprime(x, eps);
  out.x = static_cast<double>(x);
  out.residual = static_cast<double>(hyper_f(x, eps));
  return out;
}

double hyperasymptotic_slope(int order, const std::vector<double>& eps_values) {
  if (eps_values.size() < 2) fail(ErrorCode::kPrecondition, "slope needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(eps_values.size());
  for (double e : eps_values) {
    double x = 1.0 / e;
    double y = std::log(std::abs(hyperasymptotic_root(e, order).residual));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

Expr morrison_u(double eps, double a0, const Expr& t) {
  Expr g = exp(constant(3.0 * eps * eps) * t);
  return constant(4.0 * eps) * g + constant(a0 * a0) * (g - constant(Rational(1)));
}

}  // namespace

Expr morrison_amplitude(double eps, double a0) {
  Expr t = variable("t");
  if (eps == 0.0) return constant(a0) + constant(Rational(0)) * t;
  return constant(2.0 * std::sqrt(eps) * a0) / sqrt(morrison_u(eps, a0, t));
}

Expr morrison_solution(double eps, double a0) {
  Expr t = variable("t");
  if (eps == 0.0) return constant(a0) * cos(t);
  Expr u = morrison_u(eps, a0, t);
  Expr a = morrison_amplitude(eps, a0);
  double e2 = eps * eps;
  Expr phi = constant(-3.0 / 16.0 * e2) * ln(u) + constant(9.0 / 16.0 * e2 * e2) * t -
             constant(3.0 / 16.0 * e2 * a0 * a0) / u;
  Expr th = t + phi;
  Expr a3 = pow(a, Rational(3)), a5 = pow(a, Rational(5));
  return a * cos(th) + constant(eps / 32.0) * a3 * sin(constant(Rational(3)) * th) +
         constant(e2) * (constant(27.0 / 1024.0) * a5 * cos(constant(Rational(3)) * th) -
                         constant(3.0 / 1024.0) * a5 * cos(constant(Rational(5)) * th));
}

ResidualReport morrison_audit(double eps, double a0, double t_end, size_t grid_size) {
  if (eps < 0.0 || !(a0 > 0.0)) fail(ErrorCode::kPrecondition, "morrison_audit needs eps >= 0, a0 > 0");
  Expr z = morrison_solution(eps, a0);
  Expr zd = expr_diff(z, "t");
  Expr zdd = expr_diff(zd, "t");
  Expr delta = zdd + z + constant(eps) * pow(zd, Rational(3)) + constant(3.0 * eps * eps) * zd;
  Expr scale = constant(eps * eps * eps) * morrison_amplitude(eps, a0);
  if (eps == 0.0) scale = constant(1.0) + constant(Rational(0)) * variable("t");
  ResidualReport r = residual_report(delta, scale, "t", uniform_grid(0.0, t_end, grid_size));
  r.metadata["eps"] = eps;
  r.metadata["a0"] = a0;
  r.metadata["t_end"] = t_end;

  // Envelope decay of |Delta| over the second half, reported only.
  const size_t half = grid_size / 2, chunks = 20, len = (grid_size - half) / chunks;
  if (eps > 0.0 && len >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int used = 0;
    for (size_t c = 0; c < chunks; ++c) {
      double env = 0.0, tm = 0.0;
      for (size_t i = half + c * len; i < half + (c + 1) * len; ++i) {
        env = std::max(env, std::abs(r.residual_values[i]));
        tm += r.grid[i] / static_cast<double>(len);
      }
      if (env <= 0.0) continue;
      double y = std::log(env);
      sx += tm;
      sy += y;
      sxx += tm * tm;
      sxy += tm * y;
      ++used;
    }
    if (used >= 2) {
      double slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
      r.metadata["large_t_decay_rate_over_eps2"] = -slope / (eps * eps);
    }
  }
  return r;
}

namespace {

Expr pendulum_operator(const Expr& z, double eps, const std::string& var) {
  Expr tau = variable(var);
  Expr zd = expr_diff(z, var);
  Expr zdd = expr_diff(zd, var);
  return (constant(1.0) + constant(eps) * tau) * zdd + constant(2.0 * eps) * zd + z;
}

Expr renorm_form(double eps) {
  Expr tau = variable("tau");
  return exp(constant(-0.75 * eps) * tau) * cos(tau - constant(0.25 * eps) * pow(tau, Rational(2)));
}

}  // namespace

ResidualReport pendulum_audit(double eps, double tau_end, size_t grid_size, PendulumForm which) {
  if (!(eps > 0.0)) fail(ErrorCode::kPrecondition, "pendulum_audit needs eps > 0");
  Expr tau = variable("tau");
  Expr e = constant(eps);
  Expr theta = tau - constant(0.25 * eps) * pow(tau, Rational(2));
  Expr decay = exp(constant(-0.75 * eps) * tau);
  Expr residual, scale, lead;
  switch (which) {
    case PendulumForm::kRegular: {
      Expr z = to_expr(pendulum_regular(1).series, e, tau);
      residual = pendulum_operator(z, eps, "tau");
      scale = constant(eps * eps) + constant(Rational(0)) * tau;
      Expr t2 = pow(tau, Rational(2)), t3 = pow(tau, Rational(3));
      lead = constant(Rational(-1, 4)) *
             (t3 * sin(tau) - constant(Rational(9)) * t2 * cos(tau) - constant(Rational(15)) * tau * sin(tau));
      break;
    }
    case PendulumForm::kRenorm: {
      Expr z = renorm_form(eps);
      residual = pendulum_operator(z, eps, "tau");
      scale = constant(eps * eps) * decay;
      lead = (constant(Rational(3, 4)) * pow(tau, Rational(2)) - constant(Rational(15, 16))) * cos(theta) +
             constant(Rational(9, 4)) * tau * sin(theta);
      break;
    }
    case PendulumForm::kModified: {
      Expr z = renorm_form(eps);
      auto fit = optimal_backward_error(pendulum_ode(), pendulum_renorm_series(3), pendulum_fit_spec());
      Expr zd = expr_diff(z, "tau");
      Expr zdd = expr_diff(zd, "tau");
      const auto& c = fit.modified.coeffs;
      residual = to_expr(c[0], e, tau) * z + to_expr(c[1], e, tau) * zd + to_expr(c[2], e, tau) * zdd;
      scale = constant(eps * eps) * decay;
      lead = constant(Rational(-3, 4)) * tau * sin(theta);
      break;
    }
  }
  auto grid = uniform_grid(0.0, tau_end, grid_size);
  ResidualReport r = residual_report(residual, scale, "tau", grid);
  r.metadata["eps"] = eps;
  r.metadata["tau_end"] = tau_end;

  // Agreement of residual/scale with the leading closed form, relative to its peak.
  std::vector<double> lv;
  eval_grid_parallel(Tape(lead, {"tau"}), grid, lv);
  double dev = 0.0, peak = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    dev = std::max(dev, std::abs(r.residual_values[i] / r.scale_values[i] - lv[i]));
    peak = std::max(peak, std::abs(lv[i]));
  }
  r.metadata["leading_max_deviation"] = dev;
  r.metadata["leading_peak"] = peak;
  r.metadata["leading_relative_deviation"] = peak > 0.0 ? dev / peak : dev;
  return r;
}

GaugeSeries<Rational> dde_residual_series(const Rational& a, const Rational& b, int n) {
  if (n < 2) fail(ErrorCode::kPrecondition, "dde_residual_series needs N >= 2");
  using S = GaugeSeries<Rational>;
  const S one = S::exact("eps", {Rational(1)});
  const S denom = S::exact("eps", {Rational(1), -a});
  const S inv = series_div(one, denom, n);
  const S arg = S::exact("eps", {Rational(0), a + b}) * inv;
  S g = S(-(a + b)) * inv + S(a) * series_exp(arg.truncate(n), n) + S(b);
  return g.truncate(n);
}

}  // namespace pbe
