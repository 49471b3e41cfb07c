#include "pbe/backward_error.hpp"

#include <cmath>

namespace pbe {

namespace {

using QS = GaugeSeries<Rational>;

TrigSeries tpoly(std::map<int, Rational> terms) { return TrigSeries(RatPoly("tau", std::move(terms))); }

SeriesPoly poly_mul(const SeriesPoly& a, const SeriesPoly& b) {
  SeriesPoly out(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

}  // namespace

TrigGauge LinearOde::apply(const TrigGauge& z) const {
  TrigGauge acc;
  TrigGauge dz = z;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    if (j > 0) dz = series_diff(dz);
    acc = acc + coeffs[j] * dz;
  }
  return acc;
}

Rational coordinate(const TrigGauge& s, const FitCoordinate& c) {
  Harmonic h = s.coeff(c.order).harmonic(c.harmonic);
  return (c.sine ? h.sin_amp : h.cos_amp).coeff(c.degree);
}

OdeBackwardErrorResult optimal_backward_error(const LinearOde& ode, const TrigGauge& candidate,
                                              const OdeFitSpec& fit) {
  OdeBackwardErrorResult out;
  out.original_residual = ode.apply(candidate);
  std::vector<TrigGauge> values;
  for (const auto& dir : fit.basis) {
    LinearOde part{ode.time_symbol, {}};
    for (const auto& [slot, c] : dir.terms) {
      if (slot < 0) fail(ErrorCode::kPrecondition, "negative derivative slot");
      if (part.coeffs.size() <= static_cast<size_t>(slot)) part.coeffs.resize(static_cast<size_t>(slot) + 1);
      part.coeffs[static_cast<size_t>(slot)] = part.coeffs[static_cast<size_t>(slot)] + c;
    }
    values.push_back(part.apply(candidate));
  }
  Matrix<Rational> m;
  std::vector<Rational> rhs;
  for (const auto& c : fit.conditions) {
    std::vector<Rational> row;
    for (const auto& v : values) row.push_back(coordinate(v, c));
    m.push_back(row);
    rhs.push_back(-coordinate(out.original_residual, c));
  }
  out.parameters = solve_linear(m, rhs, ErrorCode::kUnsolvableFit);
  out.modified = ode;
  for (size_t i = 0; i < fit.basis.size(); ++i) {
    for (const auto& [slot, c] : fit.basis[i].terms) {
      auto& coeffs = out.modified.coeffs;
      if (coeffs.size() <= static_cast<size_t>(slot)) coeffs.resize(static_cast<size_t>(slot) + 1);
      coeffs[static_cast<size_t>(slot)] =
          coeffs[static_cast<size_t>(slot)] +
          c.map([&](const TrigSeries& s) { return s * TrigSeries(out.parameters[i]); });
    }
  }
  out.new_residual = out.modified.apply(candidate);
  for (const auto& c : fit.conditions)
    if (!coordinate(out.new_residual, c).is_zero())
      fail(ErrorCode::kUnsolvableFit, "fit left a target coordinate nonzero");
  return out;
}

LinearOde pendulum_ode() {
  LinearOde ode;
  ode.time_symbol = "tau";
  ode.coeffs = {TrigGauge::exact("eps", {TrigSeries(1)}),
                TrigGauge::exact("eps", {TrigSeries(), TrigSeries(2)}),
                TrigGauge::exact("eps", {TrigSeries(1), tpoly({{1, 1}})})};
  return ode;
}

OdeFitSpec pendulum_fit_spec(int degree) {
  OdeFitSpec spec;
  for (int m = 0; m <= degree; ++m) {
    OdeFitDirection dir;
    dir.terms.emplace_back(2, TrigGauge::monomial("eps", 2, tpoly({{m, 1}})));
    if (m > 0) dir.terms.emplace_back(1, TrigGauge::monomial("eps", 2, tpoly({{m - 1, Rational(2 * m)}})));
    spec.basis.push_back(dir);
    spec.conditions.push_back({2, 1, false, m});
  }
  return spec;
}

TrigGauge pendulum_renorm_series(int order) {
  // e^{-3 eps tau/4} = sum E_m eps^m; cos(tau - eps x) with x = tau^2/4.
  std::vector<TrigSeries> cs;
  for (int k = 0; k <= order; ++k) {
    TrigSeries acc;
    for (int m = 0; m <= k; ++m) {
      int n = k - m;
      Rational em = pow(Rational(-3, 4), m) / factorial(static_cast<unsigned>(m));
      Rational tn = pow(Rational(1, 4), n) / factorial(static_cast<unsigned>(n));
      if (n % 4 == 2 || n % 4 == 3) tn = -tn;
      RatPoly amp("tau", {{m + 2 * n, em * tn}});
      acc += n % 2 == 0 ? TrigSeries::cos_term("tau", 1, amp) : TrigSeries::sin_term("tau", 1, amp);
    }
    cs.push_back(acc);
  }
  return TrigGauge::truncated("eps", cs, order);
}

SeriesPoly norm_polynomial(const GaugeSeries<CycloElement>& z) {
  int n = 1;
  for (int k = z.low(); k <= z.order(); ++k) n = std::max(n, z.coeff(k).order());
  // Components z_i with z = sum_i z_i alpha^i.
  std::vector<QS> comp;
  for (int i = 0; i < n; ++i) {
    comp.push_back(z.map([&](const CycloElement& c) {
      CycloElement l = c.order() == n ? c : c.lift(n);
      return l[i];
    }));
  }
  const size_t un = static_cast<size_t>(n);
  Matrix<QS> a(un, std::vector<QS>(un));
  for (size_t i = 0; i < un; ++i)
    for (size_t k = 0; k < un; ++k) a[i][k] = comp[(i + un - k) % un];

  SeriesPoly c(un + 1);
  c[un] = QS(Rational(1));
  Matrix<QS> mk(un, std::vector<QS>(un));
  for (size_t k = 1; k <= un; ++k) {
    Matrix<QS> next(un, std::vector<QS>(un));
    for (size_t i = 0; i < un; ++i) {
      for (size_t j = 0; j < un; ++j) {
        QS s;
        for (size_t l = 0; l < un; ++l) s = s + a[i][l] * mk[l][j];
        if (i == j) s = s + c[un - k + 1];
        next[i][j] = s;
      }
    }
    mk = std::move(next);
    QS tr;
    for (size_t i = 0; i < un; ++i)
      for (size_t l = 0; l < un; ++l) tr = tr + a[i][l] * mk[l][i];
    c[un - k] = tr * QS(Rational(-1, static_cast<long>(k)));
  }
  return c;
}

SimultaneousResult simultaneous_backward_error(const std::vector<GaugeSeries<CycloElement>>& branches,
                                               const GaugeSeries<Rational>& leading,
                                               const SeriesPoly& original) {
  if (branches.empty()) fail(ErrorCode::kPrecondition, "no branches");
  for (const auto& b : branches)
    if (b.denominator() != branches[0].denominator() || b.symbol() != branches[0].symbol())
      fail(ErrorCode::kGaugeMismatch, "branches are expanded in different gauges");
  SimultaneousResult out;
  out.product = {leading};
  for (const auto& b : branches) out.product = poly_mul(out.product, norm_polynomial(b));
  size_t n = std::max(out.product.size(), original.size());
  for (size_t j = 0; j < n; ++j) {
    QS p = j < out.product.size() ? out.product[j] : QS();
    QS o = j < original.size() ? original[j] : QS();
    QS d = p - o;
    out.deviation.push_back(d);
    if (auto v = d.valuation())
      out.deviation_order = out.deviation_order ? std::min(*out.deviation_order, *v) : *v;
  }
  return out;
}

double relative_deviation(const SimultaneousResult& r, const SeriesPoly& original, double mu) {
  auto val = [mu](const QS& s) {
    return s.evaluate(mu, [](const Rational& c) { return c.to_double(); });
  };
  double num = 0, den = 0;
  for (const auto& d : r.deviation) num += std::abs(val(d));
  for (const auto& o : original) den += std::abs(val(o));
  return num / den;
}

}  // namespace pbe
