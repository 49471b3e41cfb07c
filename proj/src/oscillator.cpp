#include "pbe/oscillator.hpp"

#include <algorithm>

namespace pbe {

namespace {

using QS = GaugeSeries<Rational>;

TrigGauge lift(const QS& s) {
  return s.map([](const Rational& r) { return TrigSeries(r); });
}

TrigSeries tpoly(const std::string& sym, std::map<int, Rational> terms) {
  return TrigSeries(RatPoly(sym, std::move(terms)));
}

// Particular solution P cos ht + Q sin ht of y'' + y = p cos ht + q sin ht.
Harmonic particular(int h, const RatPoly& p, const RatPoly& q, const std::string& sym) {
  const int d = std::max(p.degree(), q.degree());
  std::map<int, Rational> P, Q;
  auto get = [](const std::map<int, Rational>& m, int k) {
    auto it = m.find(k);
    return it == m.end() ? Rational() : it->second;
  };
  if (h == 0) {
    for (int m = d; m >= 0; --m) P[m] = p.coeff(m) - Rational((m + 2) * (m + 1)) * get(P, m + 2);
  } else if (h == 1) {
    // P'' + 2Q' = p, Q'' - 2P' = q; P0 = Q0 = 0 fixes the homogeneous part.
    for (int m = d; m >= 0; --m) {
      Rational two_m1(2 * (m + 1));
      Q[m + 1] = (p.coeff(m) - Rational((m + 2) * (m + 1)) * get(P, m + 2)) / two_m1;
      P[m + 1] = (Rational((m + 2) * (m + 1)) * get(Q, m + 2) - q.coeff(m)) / two_m1;
    }
  } else {
    Rational k(1 - h * h);
    Rational two_h(2 * h);
    for (int m = d; m >= 0; --m) {
      Rational a((m + 2) * (m + 1)), b(m + 1);
      P[m] = (p.coeff(m) - a * get(P, m + 2) - two_h * b * get(Q, m + 1)) / k;
      Q[m] = (q.coeff(m) - a * get(Q, m + 2) + two_h * b * get(P, m + 1)) / k;
    }
  }
  return Harmonic{RatPoly(sym, P), RatPoly(sym, Q)};
}

// (c0 + w c1) = 0 for every condition pair; InconsistentSecularity otherwise.
Rational solve_affine(const std::vector<std::pair<Rational, Rational>>& conds) {
  std::optional<Rational> w;
  for (const auto& [c0, c1] : conds) {
    if (c1.is_zero()) continue;
    w = -c0 / c1;
    break;
  }
  Rational val = w.value_or(Rational());
  for (const auto& [c0, c1] : conds)
    if (!(c0 + val * c1).is_zero())
      fail(ErrorCode::kInconsistentSecularity, "secularity conditions disagree on omega_k");
  return val;
}

TrigGauge duffing_tau_residual(const TrigGauge& y, const QS& omega) {
  TrigGauge w = lift(omega);
  TrigGauge eps = TrigGauge::monomial("eps", 1, TrigSeries(1));
  return w * w * series_diff(series_diff(y)) + y + eps * y * y * y;
}

std::pair<Rational, Rational> gaussian(const CycloElement& c) {
  return project_to_gaussian(c.order() == 1 ? c.lift(4) : c);
}

Expr poly_expr(const RatPoly& p, const Expr& x) {
  Expr acc = constant(Rational(0));
  for (const auto& [d, c] : p.terms()) acc = acc + constant(c) * pow(x, Rational(d));
  return acc;
}

}  // namespace

TrigSeries solve_oscillator(const TrigSeries& forcing, const Rational& y0, const Rational& yp0,
                            const std::string& symbol) {
  std::string sym = forcing.symbol().empty() ? symbol : forcing.symbol();
  std::map<int, Harmonic> parts;
  for (const auto& [h, hm] : forcing.terms()) parts[h] = particular(h, hm.cos_amp, hm.sin_amp, sym);
  TrigSeries y = TrigSeries::from_terms(sym, parts);
  Rational c1 = y0 - y.value_at_zero();
  Rational c2 = yp0 - trig_diff(y).value_at_zero();
  return y + TrigSeries::cos_term(sym, 1, RatPoly(c1)) + TrigSeries::sin_term(sym, 1, RatPoly(c2));
}

TrigGauge series_diff(const TrigGauge& z) { return z.map([](const TrigSeries& c) { return trig_diff(c); }); }

OdeResidualSpec duffing_spec() {
  OdeResidualSpec s;
  s.time_symbol = "t";
  s.y0 = 1;
  s.yp0 = 0;
  s.residual = [](const TrigGauge& z) {
    TrigGauge eps = TrigGauge::monomial("eps", 1, TrigSeries(1));
    return series_diff(series_diff(z)) + z + eps * z * z * z;
  };
  return s;
}

OdeResidualSpec pendulum_spec() {
  OdeResidualSpec s;
  s.time_symbol = "tau";
  s.y0 = 1;
  s.yp0 = 0;
  s.residual = [](const TrigGauge& z) {
    TrigGauge c2 = TrigGauge::exact("eps", {TrigSeries(1), tpoly("tau", {{1, 1}})});
    TrigGauge c1 = TrigGauge::monomial("eps", 1, TrigSeries(2));
    TrigGauge dz = series_diff(z);
    return c2 * series_diff(dz) + c1 * dz + z;
  };
  return s;
}

PerturbationSolution<TrigSeries> perturb_iterate(const OdeResidualSpec& spec, const TrigSeries& z0,
                                                 int n_max) {
  if (n_max < 0) fail(ErrorCode::kPrecondition, "order must be >= 0");
  TrigGauge z = TrigGauge::exact("eps", {z0});
  TrigSeries r0 = spec.residual(z.truncate(0)).coeff(0);
  if (!r0.is_zero()) fail(ErrorCode::kBadInitialTerm, "order-0 residual " + r0.str() + " is not zero");
  PerturbationSolution<TrigSeries> sol;
  for (int n = 0; n < n_max; ++n) {
    TrigSeries rhs = -spec.residual(z.truncate(n + 1)).coeff(n + 1);
    TrigSeries u = solve_oscillator(rhs, 0, 0, spec.time_symbol);
    sol.diagnostics.push_back({n + 1, rhs.str(), u.str()});
    z = z + TrigGauge::monomial("eps", n + 1, u);
  }
  sol.series = z;
  sol.residual = spec.residual(z);
  sol.achieved_order = detail::achieved(sol.residual, n_max);
  return sol;
}

PerturbationSolution<TrigSeries> duffing_regular(int n_max) {
  return perturb_iterate(duffing_spec(), TrigSeries::cos_term("t", 1), n_max);
}

PerturbationSolution<TrigSeries> pendulum_regular(int n_max) {
  return perturb_iterate(pendulum_spec(), TrigSeries::cos_term("tau", 1), n_max);
}

LindstedtSolution solve_lindstedt(int n_max) {
  if (n_max < 1) fail(ErrorCode::kPrecondition, "Lindstedt needs N >= 1");
  LindstedtSolution sol;
  TrigGauge y = TrigGauge::exact("eps", {TrigSeries::cos_term("tau", 1)});
  QS omega = QS::exact("eps", {1});
  for (int k = 1; k <= n_max; ++k) {
    auto forcing_at = [&](const Rational& w) {
      QS om = (omega + QS::monomial("eps", k, w)).truncate(k);
      return -duffing_tau_residual(y.truncate(k), om).coeff(k);
    };
    TrigSeries f0 = forcing_at(0);
    TrigSeries f1 = forcing_at(1);
    Harmonic h0 = f0.harmonic(1), h1 = f1.harmonic(1);
    std::vector<std::pair<Rational, Rational>> conds;
    int deg = std::max({h0.cos_amp.degree(), h0.sin_amp.degree(), h1.cos_amp.degree(), h1.sin_amp.degree(), 0});
    for (int m = 0; m <= deg; ++m) {
      conds.emplace_back(h0.cos_amp.coeff(m), h1.cos_amp.coeff(m) - h0.cos_amp.coeff(m));
      conds.emplace_back(h0.sin_amp.coeff(m), h1.sin_amp.coeff(m) - h0.sin_amp.coeff(m));
    }
    Rational wk = solve_affine(conds);
    omega = omega + QS::monomial("eps", k, wk);
    TrigSeries forcing = f0 + (f1 - f0) * TrigSeries(wk);
    TrigSeries yk = solve_oscillator(forcing, 0, 0, "tau");
    sol.diagnostics.push_back({k, forcing.str(), "omega_" + std::to_string(k) + " = " + wk.str()});
    y = y + TrigGauge::monomial("eps", k, yk);
  }
  sol.series = y;
  sol.omega = omega;
  sol.tau_residual = duffing_tau_residual(y, omega);
  return sol;
}

TrigGauge rescale_time(const TrigGauge& y, const QS& omega, int order, const std::string& t_symbol) {
  const TrigSeries t = tpoly(t_symbol, {{1, 1}});
  // delta = (omega - 1) t, zero constant term.
  std::vector<TrigSeries> dc;
  for (int k = 0; k <= order; ++k) dc.push_back(k == 0 ? TrigSeries() : TrigSeries(omega.coeff(k)) * t);
  TrigGauge delta = TrigGauge::truncated("eps", dc, order);
  TrigGauge omega_t = delta + TrigGauge::truncated("eps", {t}, order);

  std::vector<TrigGauge> delta_pow{TrigGauge::truncated("eps", {TrigSeries(1)}, order)};
  for (int m = 1; m <= order; ++m) delta_pow.push_back(delta_pow.back() * delta);

  TrigGauge out = TrigGauge::truncated("eps", {}, order);
  for (int k = y.low(); k <= std::min(order, y.order()); ++k) {
    const TrigSeries& yk = y.coeff(k);
    for (const auto& [h, hm] : yk.terms()) {
      TrigGauge ch = TrigGauge::truncated("eps", {}, order);
      TrigGauge sh = TrigGauge::truncated("eps", {}, order);
      Rational hpow(1);
      // ch = cos(h delta), sh = sin(h delta)
      for (int m = 0; m <= order; ++m) {
        Rational c = hpow / factorial(static_cast<unsigned>(m));
        if (m % 4 == 1 || m % 4 == 2) c = -c;
        TrigGauge term = delta_pow[static_cast<size_t>(m)].map([&](const TrigSeries& s) { return s * TrigSeries(c); });
        if (m % 2 == 0) {
          ch = ch + term;
        } else {
          sh = sh - term;
        }
        hpow *= Rational(h);
      }
      TrigGauge cos_part = ch.map([&](const TrigSeries& s) { return s * TrigSeries::cos_term(t_symbol, h); }) -
                           sh.map([&](const TrigSeries& s) { return s * TrigSeries::sin_term(t_symbol, h); });
      TrigGauge sin_part = sh.map([&](const TrigSeries& s) { return s * TrigSeries::cos_term(t_symbol, h); }) +
                           ch.map([&](const TrigSeries& s) { return s * TrigSeries::sin_term(t_symbol, h); });
      auto amp = [&](const RatPoly& p) {
        TrigGauge acc = TrigGauge::truncated("eps", {}, order);
        TrigGauge pw = TrigGauge::truncated("eps", {TrigSeries(1)}, order);
        for (int m = 0; m <= p.degree(); ++m) {
          if (m > 0) pw = pw * omega_t;
          Rational c = p.coeff(m);
          if (!c.is_zero()) acc = acc + pw.map([&](const TrigSeries& s) { return s * TrigSeries(c); });
        }
        return acc;
      };
      TrigGauge piece = amp(hm.cos_amp) * cos_part + amp(hm.sin_amp) * sin_part;
      out = out + piece.shift(k).truncate(order);
    }
  }
  return out;
}

TrigGauge lindstedt_t_residual(const LindstedtSolution& sol) {
  int order = sol.series.order() + 1;
  TrigGauge z = rescale_time(sol.series, sol.omega, order);
  TrigGauge eps = TrigGauge::monomial("eps", 1, TrigSeries(1));
  return series_diff(series_diff(z)) + z + eps * z * z * z;
}

RenormResult renormalize(const PerturbationSolution<TrigSeries>& regular, int n_max) {
  const TrigGauge& z = regular.series;
  std::string sym;
  std::vector<CycloPoly> a;
  const CycloElement i4 = CycloElement::root_power(4, 1);
  for (int k = 0; k <= n_max; ++k) {
    const TrigSeries& yk = z.coeff(k);
    for (const auto& [h, hm] : yk.terms())
      if (h != 1) fail(ErrorCode::kPrecondition, "renormalize expects only the base harmonic");
    if (!yk.symbol().empty()) sym = yk.symbol();
    Harmonic hm = yk.harmonic(1);
    CycloPoly ak;
    for (const auto& [d, c] : hm.cos_amp.terms()) ak += CycloPoly::monomial(yk.symbol(), d, CycloElement(c).lift(4));
    for (const auto& [d, c] : hm.sin_amp.terms()) ak -= CycloPoly::monomial(yk.symbol(), d, i4 * CycloElement(c));
    a.push_back(ak);
  }
  if (sym.empty()) sym = "tau";
  RenormResult out;
  out.amplitude = GaugeSeries<CycloPoly>::truncated("eps", a, n_max);
  if (!(out.amplitude.coeff(0) == CycloPoly(CycloElement(1))))
    fail(ErrorCode::kNotUnitAmplitude, "order-0 amplitude is " + out.amplitude.coeff(0).str());
  out.amplitude_log = series_log(out.amplitude);

  Expr eps = variable("eps"), tau = variable(sym);
  Expr re = constant(Rational(0)), im = constant(Rational(0)), im_nc = constant(Rational(0));
  for (int k = 0; k <= n_max; ++k) {
    std::map<int, Rational> rp, ip;
    const CycloPoly lk = out.amplitude_log.coeff(k);
    for (const auto& [d, c] : lk.terms()) {
      auto [x, y] = gaussian(c);
      rp[d] = x;
      ip[d] = y;
    }
    RatPoly r(sym, rp), i(sym, ip);
    out.re_log.push_back(r);
    out.im_log.push_back(i);
    out.constant_phase.push_back(i.coeff(0));
    Expr ek = pow(eps, Rational(k));
    re = re + ek * poly_expr(r, tau);
    im = im + ek * poly_expr(i, tau);
    im_nc = im_nc + ek * poly_expr(i - RatPoly(i.coeff(0)), tau);
  }
  out.closed_form = exp(re) * cos(tau + im);
  out.closed_form_without_constant_phase = exp(re) * cos(tau + im_nc);
  return out;
}

Expr pendulum_renorm_closed_form() {
  Expr eps = variable("eps"), tau = variable("tau");
  return exp(constant(Rational(-3, 4)) * eps * tau) *
         cos(tau - constant(Rational(1, 4)) * eps * pow(tau, Rational(2)));
}

}  // namespace pbe
