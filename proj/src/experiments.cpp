#include "pbe/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include "pbe/algebraic.hpp"
#include "pbe/asymptotics.hpp"
#include "pbe/audit.hpp"
#include "pbe/backward_error.hpp"
#include "pbe/oscillator.hpp"

namespace pbe {

using json = nlohmann::ordered_json;
using QS = GaugeSeries<Rational>;
using CS = GaugeSeries<CycloElement>;

namespace {

std::string coeff_str(const Rational& r) { return r.str(); }
std::string coeff_str(const CycloElement& c) { return c.str("alpha"); }
std::string coeff_str(const TrigSeries& t) { return t.str(); }

std::string power_str(const std::string& sym, int k, int d) {
  Rational p(k, d);
  if (p.is_integer()) return sym + "^" + p.str();
  return sym + "^(" + p.str() + ")";
}

template <class R>
std::string term_str(const R& c, const std::string& sym, int k, int d) {
  std::string s = coeff_str(c);
  if (s.find(' ') != std::string::npos) s = "(" + s + ")";
  if (k == 0) return s;
  return s + " " + power_str(sym, k, d);
}

template <class R>
json series_json(const GaugeSeries<R>& s, const std::string& display = "ε") {
  json j;
  j["symbol"] = s.symbol();
  j["denominator"] = s.denominator();
  j["low"] = s.low();
  j["exact"] = s.is_exact();
  if (!s.is_exact()) j["order"] = s.order();
  json cs = json::array();
  if (!s.is_zero_series() || !s.is_exact())
    for (int k = s.low(); k <= s.order(); ++k) cs.push_back(coeff_str(s.coeff(k)));
  j["coefficients"] = cs;
  if (auto v = s.valuation()) j["leading_term"] = term_str(s.coeff(*v), display, *v, s.denominator());
  else j["leading_term"] = "0";
  j["text"] = s.str();
  return j;
}

template <class R>
std::string leading(const GaugeSeries<R>& s, const std::string& display = "ε") {
  if (auto v = s.valuation()) return term_str(s.coeff(*v), display, *v, s.denominator());
  return "0";
}

json diagnostics_json(const std::vector<SolveRecord>& d) {
  json a = json::array();
  for (const auto& r : d) a.push_back({{"order", r.order}, {"rhs", r.rhs}, {"correction", r.correction}});
  return a;
}

json matrix_json(const Matrix<Rational>& m) {
  json a = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v.str());
    a.push_back(r);
  }
  return a;
}

double eval_rational_series(const QS& s, double eps) {
  return s.evaluate(eps, [](const Rational& r) { return r.to_double(); });
}

int order_or(const ExperimentConfig& c, int dflt) {
  int n = c.order.value_or(dflt);
  if (n < 0) fail(ErrorCode::kPrecondition, "--order must be >= 0");
  return n;
}

double eps_or(const ExperimentConfig& c, double dflt) {
  return c.eps ? parse_exact(*c.eps).to_double() : dflt;
}

CsvTable report_table(const std::string& file, const std::string& abscissa, const ResidualReport& r) {
  CsvTable t{file, {abscissa, "residual", "scaled"}, {}};
  for (size_t i = 0; i < r.grid.size(); ++i)
    t.rows.push_back({r.grid[i], r.residual_values[i], r.residual_values[i] / r.scale_values[i]});
  return t;
}

json report_summary(const ResidualReport& r) {
  json j;
  j["grid_points"] = r.grid.size();
  j["grid_start"] = r.grid.front();
  j["grid_end"] = r.grid.back();
  j["max_abs"] = r.max_abs;
  j["max_scaled"] = r.max_scaled;
  json m;
  for (const auto& [k, v] : r.metadata) m[k] = v;
  j["metadata"] = m;
  return j;
}

AlgebraicProblem<Rational> quintic_regular_problem() {
  return make_problem<Rational>("eps", {{-1}, {0, -1}, {}, {}, {}, {1}});
}

AlgebraicProblem<Rational> quintic_singular_problem() {
  return make_problem<Rational>("eps", {{-1}, {-1}, {}, {}, {}, {0, 1}});
}

// Exact residual series as a function of eps on [0, eps_max].
CsvTable residual_curve(const std::string& file, const QS& residual, double eps_max) {
  CsvTable t{file, {"eps", "residual"}, {}};
  for (int i = 0; i <= 100; ++i) {
    double e = eps_max * i / 100.0;
    t.rows.push_back({e, eval_rational_series(residual, e)});
  }
  return t;
}

ExperimentOutput quintic_regular(const ExperimentConfig& c) {
  const int n = order_or(c, 3);
  auto sol = perturb_iterate(quintic_regular_problem(), Rational(1), n);
  ExperimentOutput out;
  auto& r = out.report;
  r["equation"] = "u^5 - eps*u - 1 = 0";
  r["order"] = n;
  r["series"] = series_json(sol.series);
  r["coefficients"] = r["series"]["coefficients"];
  r["residual"] = series_json(sol.residual);
  r["residual_leading_term"] = leading(sol.residual);
  r["achieved_order"] = sol.achieved_order;
  r["residual_at_eps_1"] = eval_rational_series(sol.residual, 1.0);
  r["diagnostics"] = diagnostics_json(sol.diagnostics);
  out.tables.push_back(residual_curve("residual.csv", sol.residual, 1.0));
  out.summary.push_back("z = " + sol.series.str());
  out.summary.push_back("residual leading term: " + leading(sol.residual));
  return out;
}

ExperimentOutput quintic_system(const ExperimentConfig& c) {
  const int n = order_or(c, 3);
  SystemProblem sys = circle_hyperbola_system();
  auto sol = perturb_iterate(sys, std::vector<Rational>{Rational(3, 5), Rational(4, 5)}, n);
  ExperimentOutput out;
  auto& r = out.report;
  r["system"] = "circle/hyperbola";
  r["order"] = n;
  json u0 = json::array();
  for (const auto& v : sol.root.u0) u0.push_back(v.str());
  r["u0"] = u0;
  r["jacobian"] = matrix_json(sol.root.jacobian);
  r["determinant"] = sol.root.det.str();
  r["jacobian_inverse"] = matrix_json(sol.root.jacobian_inverse);
  json series = json::object(), residual = json::object();
  for (size_t i = 0; i < sol.series.size(); ++i) {
    series[sys.unknowns[i]] = series_json(sol.series[i]);
    residual["equation_" + std::to_string(i + 1)] = series_json(sol.residual[i]);
  }
  r["series"] = series;
  r["residual"] = residual;
  r["achieved_order"] = sol.achieved_order;
  r["diagnostics"] = diagnostics_json(sol.diagnostics);
  CsvTable t{"residual.csv", {"eps"}, {}};
  for (size_t i = 0; i < sol.residual.size(); ++i) t.headers.push_back("residual_" + std::to_string(i + 1));
  for (int k = 0; k <= 100; ++k) {
    double e = k / 100.0;
    std::vector<double> row{e};
    for (const auto& s : sol.residual) row.push_back(eval_rational_series(s, e));
    t.rows.push_back(row);
  }
  out.tables.push_back(t);
  for (size_t i = 0; i < sol.series.size(); ++i) out.summary.push_back(sys.unknowns[i] + " = " + sol.series[i].str());
  return out;
}

ExperimentOutput quintic_puiseux(const ExperimentConfig& c) {
  const int n = order_or(c, 5);
  auto p = make_problem<CycloElement>("eps", {{0, -1}, {0, -1}, {}, {}, {}, {1}});
  auto sol = solve_puiseux(p, 5, 1, CycloElement::root_power(5, 1), n);
  ExperimentOutput out;
  auto& r = out.report;
  r["equation"] = "u^5 - eps*(u + 1) = 0";
  r["gauge"] = "mu = eps^(1/5), u = mu*y, alpha^5 = 1";
  r["order"] = n;
  r["scaled_series"] = series_json(sol.scaled_series);
  r["series"] = series_json(sol.series);
  r["residual"] = series_json(sol.residual);
  r["residual_leading_term"] = leading(sol.residual);
  r["achieved_order"] = sol.achieved_order;
  r["diagnostics"] = diagnostics_json(sol.diagnostics);
  out.summary.push_back("u = " + sol.series.str());
  out.summary.push_back("residual leading term: " + leading(sol.residual));
  return out;
}

SeriesPoly quintic_original() {
  SeriesPoly o(6);
  o[5] = QS::exact("eps", {0, 0, 0, 0, 1}, 4);
  o[1] = QS::exact("eps", {-1}, 4);
  o[0] = QS::exact("eps", {-1}, 4);
  return o;
}

ExperimentOutput quintic_singular(const ExperimentConfig& c) {
  const int n = order_or(c, 5);
  auto p = make_problem<CycloElement>("eps", {{-1}, {-1}, {}, {}, {}, {0, 1}});
  auto sol = solve_puiseux(p, 4, -1, CycloElement::root_power(4, 1), n);
  ExperimentOutput out;
  auto& r = out.report;
  r["equation"] = "eps*u^5 - u - 1 = 0";
  r["gauge"] = "mu = eps^(1/4), u = y/mu, alpha^4 = 1";
  r["order"] = n;
  r["scaled_series"] = series_json(sol.scaled_series);
  r["series"] = series_json(sol.series);
  r["residual"] = series_json(sol.residual);
  r["residual_leading_term"] = leading(sol.residual);

  auto reg = perturb_iterate(quintic_singular_problem(), Rational(-1), 7);
  r["regular_branch"] = {{"series", series_json(reg.series)},
                         {"residual_leading_term", leading(reg.residual)},
                         {"value_at_eps_0.2", eval_rational_series(reg.series, 0.2)},
                         {"residual_at_eps_0.2", eval_rational_series(reg.residual, 0.2)}};

  // Optimal backward error: eps^{j/4} perturbations of the u^5 coefficient.
  BEFitSpec<CycloElement> fit;
  for (int j = 10; j <= 15; ++j) fit.basis.push_back({5, j, CycloElement(1)});
  for (int k = 5; k <= 10; ++k) fit.orders_to_cancel.push_back(k);
  auto z5 = n == 5 ? sol.series : solve_puiseux(p, 4, -1, CycloElement::root_power(4, 1), 5).series;
  auto be = optimal_backward_error(refine_problem(p, 4), z5, fit);
  json params = json::array();
  for (size_t i = 0; i < be.parameters.size(); ++i)
    params.push_back({{"name", "a" + std::to_string(10 + i)}, {"value", coeff_str(be.parameters[i])}});
  r["optimal_backward_error"] = {{"parameters", params},
                                 {"original_leading_term", leading(be.original_residual)},
                                 {"new_residual", series_json(be.new_residual)},
                                 {"new_leading_term", leading(be.new_residual)},
                                 {"improvement_order", be.improvement_order}};

  // Simultaneous backward error over all five roots.
  auto reg2 = perturb_iterate(quintic_singular_problem(), Rational(-1), 2);
  CS reg4 = gauge_refine(reg2.series, 4).map([](const Rational& v) { return CycloElement(v); });
  QS mu4 = QS::exact("eps", {0, 0, 0, 0, 1}, 4);
  SeriesPoly orig = quintic_original();
  auto sim = simultaneous_backward_error({z5, reg4}, mu4, orig);
  json prod = json::array(), dev = json::array();
  for (size_t j = 0; j < sim.product.size(); ++j) {
    prod.push_back({{"power", j}, {"coefficient", series_json(sim.product[j])}});
    dev.push_back({{"power", j}, {"coefficient", series_json(sim.deviation[j])}});
  }
  r["simultaneous_backward_error"] = {{"product", prod}, {"deviation", dev}};
  if (sim.deviation_order) r["simultaneous_backward_error"]["deviation_order"] = *sim.deviation_order;

  CsvTable t{"simultaneous_deviation.csv", {"mu", "relative_deviation"}, {}};
  for (int k = 1; k <= 100; ++k) {
    double mu = 0.5 * k / 100.0;
    t.rows.push_back({mu, relative_deviation(sim, orig, mu)});
  }
  out.tables.push_back(t);
  out.summary.push_back("z = " + sol.series.str());
  out.summary.push_back("residual leading term: " + leading(sol.residual));
  out.summary.push_back("optimal BE new residual leading term: " + leading(be.new_residual));
  return out;
}

ExperimentOutput hyperasymptotic(const ExperimentConfig& c) {
  const double eps = eps_or(c, 0.1);
  ExperimentOutput out;
  auto& r = out.report;
  r["equation"] = "1 + x + eps*sech(x/eps) = 0";
  auto r0 = hyperasymptotic_root(eps, 0), r1 = hyperasymptotic_root(eps, 1);
  r["eps"] = eps;
  r["x0"] = r0.x;
  r["delta0"] = r0.residual;
  r["delta0_closed_form"] = r0.closed_form_residual;
  r["x1"] = r1.x;
  r["delta1"] = r1.residual;
  r["delta1_over_4eps_exp_minus7_over_eps"] = r1.residual / (4 * eps * std::exp(-7 / eps));
  std::vector<double> wide, narrow;
  for (int i = 0; i <= 6; ++i) wide.push_back(0.2 + 0.05 * i);
  for (int i = 0; i <= 6; ++i) narrow.push_back(0.05 + 0.025 * i);
  r["slopes"] = {{"delta0_eps_0.05_0.2", hyperasymptotic_slope(0, {0.05, 0.1, 0.2})},
                 {"delta1_eps_0.2_0.5", hyperasymptotic_slope(1, wide)},
                 {"delta1_eps_0.05_0.2", hyperasymptotic_slope(1, narrow)}};
  CsvTable t{"hyperasymptotic.csv", {"eps", "delta0", "delta0_closed_form", "delta1"}, {}};
  for (int i = 0; i <= 45; ++i) {
    double e = 0.05 + 0.01 * i;
    auto a = hyperasymptotic_root(e, 0), b = hyperasymptotic_root(e, 1);
    t.rows.push_back({e, a.residual, a.closed_form_residual, b.residual});
  }
  out.tables.push_back(t);
  char buf[160];
  std::snprintf(buf, sizeof buf, "eps = %g: Delta0 = %.6e, Delta1 = %.6e", eps, r0.residual, r1.residual);
  out.summary.push_back(buf);
  return out;
}

ExperimentOutput bessel_truncation(const ExperimentConfig& c) {
  const double x = c.x.value_or(2.3);
  if (!(x > 0)) fail(ErrorCode::kPrecondition, "--x must be positive");
  auto plain = optimal_truncation(x, false), trig = optimal_truncation(x, true);
  const double j0 = bessel_j0_oracle(x);
  ExperimentOutput out;
  auto& r = out.report;
  r["x"] = x;
  r["kStar"] = {{"plain", plain.k_star}, {"trig", trig.k_star}};
  r["j0_oracle"] = j0;
  json rows = json::array();
  CsvTable t{"truncation.csv", {"k", "magnitude", "magnitude_trig", "partial_sum", "forward_error"}, {}};
  for (int k = 0; k <= 10; ++k) {
    double s = hankel_partial_sum(x, k);
    rows.push_back({{"k", k},
                    {"a_k", hankel_coeff(k).str()},
                    {"magnitude", plain.magnitudes[static_cast<size_t>(k)]},
                    {"magnitude_trig", trig.magnitudes[static_cast<size_t>(k)]},
                    {"partial_sum", s},
                    {"forward_error", s - j0}});
    t.rows.push_back({static_cast<double>(k), plain.magnitudes[static_cast<size_t>(k)],
                      trig.magnitudes[static_cast<size_t>(k)], s, s - j0});
  }
  r["table"] = rows;
  out.tables.push_back(t);
  out.summary.push_back("kStar plain = " + std::to_string(plain.k_star) + ", trig = " + std::to_string(trig.k_star));
  return out;
}

Expr trig_expr(const TrigGauge& s, double eps, const std::string& var) {
  return to_expr(s, constant(eps), variable(var));
}

CsvTable numeric_residual(const std::string& file, const std::string& var, const TrigGauge& residual, double eps,
                          double t_end) {
  Tape tp(trig_expr(residual, eps, var), {var});
  CsvTable t{file, {var, "residual"}, {}};
  for (int i = 0; i <= 1000; ++i) {
    double v = t_end * i / 1000.0;
    t.rows.push_back({v, tp.eval(&v)});
  }
  return t;
}

template <class R>
json amplitude_degrees(const GaugeSeries<R>& s) {
  json a = json::array();
  if (s.is_zero_series()) return a;
  for (int k = s.low(); k <= s.order(); ++k)
    a.push_back({{"order", k}, {"amplitude_degree", s.coeff(k).amplitude_degree()}});
  return a;
}

ExperimentOutput duffing_reg(const ExperimentConfig& c) {
  const int n = order_or(c, 2);
  const double eps = eps_or(c, 0.1);
  auto sol = duffing_regular(n);
  ExperimentOutput out;
  auto& r = out.report;
  r["equation"] = "y'' + y + eps*y^3 = 0, y(0) = 1, y'(0) = 0";
  r["order"] = n;
  r["series"] = series_json(sol.series);
  r["residual"] = series_json(sol.residual);
  r["residual_leading_term"] = leading(sol.residual);
  r["residual_amplitude_degrees"] = amplitude_degrees(sol.residual);
  r["achieved_order"] = sol.achieved_order;
  out.tables.push_back(numeric_residual("residual.csv", "t", sol.residual, eps, 50.0));
  out.summary.push_back("y = " + sol.series.str());
  out.summary.push_back("residual leading term: " + leading(sol.residual));
  return out;
}

ExperimentOutput duffing_lindstedt(const ExperimentConfig& c) {
  const int n = order_or(c, 3);
  const double eps = eps_or(c, 0.1);
  auto sol = solve_lindstedt(n);
  auto tres = lindstedt_t_residual(sol);
  ExperimentOutput out;
  auto& r = out.report;
  r["equation"] = "y'' + y + eps*y^3 = 0, tau = omega*t";
  r["order"] = n;
  r["omega"] = series_json(sol.omega);
  r["series"] = series_json(sol.series);
  r["series_amplitude_degrees"] = amplitude_degrees(sol.series);
  r["tau_residual"] = series_json(sol.tau_residual);
  r["t_residual"] = series_json(tres);
  r["t_residual_leading_term"] = leading(tres);
  r["diagnostics"] = diagnostics_json(sol.diagnostics);
  out.tables.push_back(numeric_residual("t_residual.csv", "t", tres, eps, 50.0));
  out.summary.push_back("omega = " + sol.omega.str());
  out.summary.push_back("t-residual leading term: " + leading(tres));
  return out;
}

ExperimentOutput morrison(const ExperimentConfig& c) {
  const double eps = eps_or(c, 0.1);
  const double a0 = c.a0.value_or(1.0);
  if (!(eps > 0)) fail(ErrorCode::kPrecondition, "--eps must be positive");
  const double t_end = 10 * std::log(10.0) / (eps * eps);
  auto rep = morrison_audit(eps, a0, t_end, 2000);
  ExperimentOutput out;
  auto& r = out.report;
  r["equation"] = "z'' + z + eps*z'^3 + 3*eps^2*z' = 0";
  r["eps"] = eps;
  r["a0"] = a0;
  r["scale"] = "eps^3 * a(t)";
  r["audit"] = report_summary(rep);
  r["max_scaled_below_one"] = rep.max_scaled < 1.0;
  out.tables.push_back(report_table("residual.csv", "t", rep));
  char buf[120];
  std::snprintf(buf, sizeof buf, "max |Delta/(eps^3 a)| = %.6f on [0, %.6g]", rep.max_scaled, t_end);
  out.summary.push_back(buf);
  return out;
}

ExperimentOutput pendulum(const ExperimentConfig& c) {
  const double eps = eps_or(c, 0.1);
  static const std::map<std::string, PendulumForm> forms = {
      {"regular", PendulumForm::kRegular}, {"renorm", PendulumForm::kRenorm}, {"modified", PendulumForm::kModified}};
  auto it = forms.find(c.variant);
  if (it == forms.end()) fail(ErrorCode::kPrecondition, "--variant must be regular, renorm or modified");
  ExperimentOutput out;
  auto& r = out.report;
  r["equation"] = "(1 + eps*tau) z'' + 2*eps*z' + z = 0";
  r["variant"] = c.variant;
  r["eps"] = eps;

  auto reg = pendulum_regular(order_or(c, 1));
  r["regular"] = {{"series", series_json(reg.series)}, {"residual", series_json(reg.residual)}};
  auto ren = renormalize(pendulum_regular(2), 2);
  json re = json::array(), im = json::array();
  for (const auto& p : ren.re_log) re.push_back(p.str());
  for (const auto& p : ren.im_log) im.push_back(p.str());
  r["renormalized"] = {{"re_log", re}, {"im_log", im}, {"closed_form", to_string(ren.closed_form_without_constant_phase)}};
  auto fit = optimal_backward_error(pendulum_ode(), pendulum_renorm_series(3), pendulum_fit_spec());
  json p = json::array();
  for (const auto& v : fit.parameters) p.push_back(v.str());
  r["structured_backward_error"] = {{"p_coefficients", p},
                                    {"original_residual", series_json(fit.original_residual)},
                                    {"new_residual", series_json(fit.new_residual)}};

  auto rep = pendulum_audit(eps, 30.0, 3001, it->second);
  r["audit"] = report_summary(rep);
  r["residual_at_tau_30"] = rep.residual_values.back();
  out.tables.push_back(report_table("residual.csv", "tau", rep));
  char buf[120];
  std::snprintf(buf, sizeof buf, "%s: max |residual| on [0, 30] = %.6e", c.variant.c_str(), rep.max_abs);
  out.summary.push_back(buf);
  return out;
}

ExperimentOutput dde(const ExperimentConfig& c) {
  const Rational a = parse_exact(c.a.value_or("1")), b = parse_exact(c.b.value_or("1"));
  const int n = std::max(2, order_or(c, 4));
  auto g = dde_residual_series(a, b, n);
  ExperimentOutput out;
  auto& r = out.report;
  r["equation"] = "y'(t) = -a y(t - eps) - b y(t)";
  r["a"] = a.str();
  r["b"] = b.str();
  r["order"] = n;
  r["g"] = series_json(g);
  r["leading_term"] = leading(g);
  r["predicted_eps2_coefficient"] = (a * (a + b) * (a + b) / Rational(2)).str();
  const double ad = a.to_double(), bd = b.to_double();
  CsvTable t{"g.csv", {"eps", "series", "closed_form"}, {}};
  for (int i = 0; i <= 100; ++i) {
    double e = 0.2 * i / 100.0;
    double exact = -(ad + bd) / (1 - ad * e) + ad * std::exp((ad + bd) * e / (1 - ad * e)) + bd;
    t.rows.push_back({e, eval_rational_series(g, e), exact});
  }
  out.tables.push_back(t);
  out.summary.push_back("g = " + g.str());
  return out;
}

using Runner = std::function<ExperimentOutput(const ExperimentConfig&)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> r = {
      {"quintic-regular", quintic_regular},     {"quintic-system", quintic_system},
      {"quintic-puiseux", quintic_puiseux},     {"quintic-singular", quintic_singular},
      {"hyperasymptotic", hyperasymptotic},     {"bessel-truncation", bessel_truncation},
      {"duffing-regular", duffing_reg},         {"duffing-lindstedt", duffing_lindstedt},
      {"morrison", morrison},                   {"pendulum", pendulum},
      {"dde", dde},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

Rational parse_exact(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational::parse(text);
  std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
  if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorCode::kPrecondition, "not a number: '" + text + "'");
  bool neg = !whole.empty() && whole[0] == '-';
  if (whole.empty() || whole == "-" || whole == "+") whole += "0";
  mpz_class den = 1;
  for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  Rational w = Rational::parse(whole);
  Rational f(mpz_class(frac), den);
  return neg ? w - f : w + f;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  for (const auto& [name, fn] : registry()) {
    if (name != config.name) continue;
    ExperimentOutput out = fn(config);
    json head;
    head["schema_version"] = kReportSchemaVersion;
    head["experiment"] = name;
    for (auto& [k, v] : out.report.items()) head[k] = v;
    out.report = head;
    return out;
  }
  fail(ErrorCode::kPrecondition, "unknown experiment '" + config.name + "'");
}

std::string format_csv(const CsvTable& t) {
  std::string s;
  for (size_t i = 0; i < t.headers.size(); ++i) s += (i ? "," : "") + t.headers[i];
  s += "\n";
  char buf[40];
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      s += (i ? "," : "") + std::string(buf);
    }
    s += "\n";
  }
  return s;
}

std::vector<std::string> write_outputs(const ExperimentConfig& config, const ExperimentOutput& out) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  auto put = [&](const fs::path& p, const std::string& body) {
    std::ofstream f(p, std::ios::binary);
    f << body;
    if (!f) fail(ErrorCode::kPrecondition, "cannot write " + p.string());
    written.push_back(p.string());
  };
  if (config.write_json) put(fs::path(config.out_dir) / "report.json", out.report.dump(2) + "\n");
  if (config.write_csv)
    for (const auto& t : out.tables) put(fs::path(config.out_dir) / t.file, format_csv(t));
  return written;
}

}  // namespace pbe
