#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "pbe/cyclo.hpp"
#include "pbe/errors.hpp"
#include "pbe/gauge_series.hpp"
#include "pbe/linalg.hpp"

namespace pbe {

struct SolveRecord {
  int order = 0;
  std::string rhs;
  std::string correction;
};

template <class R>
struct PerturbationSolution {
  GaugeSeries<R> series;
  GaugeSeries<R> residual;
  // Residual coefficients through this order are exactly zero.
  int achieved_order = 0;
  std::vector<SolveRecord> diagnostics;
};

// sum_j coeffs[j] * u^j = 0 with series coefficients.
template <class R>
struct AlgebraicProblem {
  std::string unknown = "u";
  std::vector<GaugeSeries<R>> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  void validate() const {
    if (degree() < 1) fail(ErrorCode::kPrecondition, "polynomial problem needs degree >= 1");
    if (coeffs.back().is_zero_series())
      fail(ErrorCode::kPrecondition, "leading coefficient is identically zero");
  }

  // F(z) by Horner's rule; exact when z and the coefficients are exact.
  GaugeSeries<R> evaluate(const GaugeSeries<R>& z) const {
    GaugeSeries<R> acc = coeffs.back();
    for (int j = degree() - 1; j >= 0; --j) acc = acc * z + coeffs[static_cast<size_t>(j)];
    return acc;
  }

  // dF/du coefficients.
  AlgebraicProblem derivative() const {
    AlgebraicProblem d{unknown, {}};
    for (int j = 1; j <= degree(); ++j)
      d.coeffs.push_back(coeffs[static_cast<size_t>(j)] * GaugeSeries<R>(R(Rational(j))));
    return d;
  }

  template <class S>
  AlgebraicProblem<S> embed() const {
    AlgebraicProblem<S> out{unknown, {}};
    for (const auto& c : coeffs) out.coeffs.push_back(c.map([](const R& r) { return S(r); }));
    return out;
  }
};

// Builds a problem from rational coefficient lists: rows[j] are the
// coefficients of eps^0, eps^1, ... in the coefficient of u^j.
template <class R>
AlgebraicProblem<R> make_problem(const std::string& symbol,
                                 const std::vector<std::vector<Rational>>& rows,
                                 const std::string& unknown = "u") {
  AlgebraicProblem<R> p{unknown, {}};
  for (const auto& row : rows) {
    std::vector<R> cs;
    for (const auto& r : row) cs.push_back(R(r));
    p.coeffs.push_back(GaugeSeries<R>::exact(symbol, std::move(cs)));
  }
  p.validate();
  return p;
}

template <class R>
GaugeSeries<R> residual_exact(const AlgebraicProblem<R>& problem, const GaugeSeries<R>& candidate) {
  return problem.evaluate(candidate);
}

namespace detail {

template <class R>
int achieved(const GaugeSeries<R>& residual, int n) {
  auto v = residual.valuation();
  if (!v) return std::max(n, residual.is_exact() ? n : residual.known_order());
  return *v - 1;
}

}  // namespace detail

// Regular iteration u_{n+1} = -A^{-1} [mu^{n+1}] F(z_n) with A = [mu^0] F'(z0)
// frozen. The returned residual is recomputed from scratch on the final z_N.
template <class R>
PerturbationSolution<R> perturb_iterate(const AlgebraicProblem<R>& problem, const R& z0, int n_max) {
  problem.validate();
  if (n_max < 0) fail(ErrorCode::kPrecondition, "order must be >= 0");
  std::string symbol;
  int d = 1;
  for (const auto& c : problem.coeffs) {
    if (c.low() < 0 && !c.is_zero_series())
      fail(ErrorCode::kPrecondition, "problem coefficients must not have negative powers");
    if (!c.symbol().empty()) symbol = c.symbol();
    d = std::max(d, c.denominator());
  }
  GaugeSeries<R> z = GaugeSeries<R>::exact(symbol, {z0}, d);

  R f0 = problem.evaluate(z.truncate(0)).coeff(0);
  if (!is_zero(f0))
    fail(ErrorCode::kBadInitialTerm, "[mu^0] F(z0) = " + to_string(f0) + " is not zero");
  R a = problem.derivative().evaluate(z.truncate(0)).coeff(0);
  if (!is_unit(a)) fail(ErrorCode::kSingularProblem, "A = " + to_string(a) + " is not invertible");
  R a_inv = inverse(a);

  PerturbationSolution<R> sol;
  for (int n = 0; n < n_max; ++n) {
    GaugeSeries<R> delta = problem.evaluate(z.truncate(n + 1));
    R rhs = delta.coeff(n + 1);
    R u = -(a_inv * rhs);
    sol.diagnostics.push_back({n + 1, to_string(rhs), to_string(u)});
    z = z + GaugeSeries<R>::monomial(symbol, n + 1, u, d);
  }
  sol.series = z;
  sol.residual = residual_exact(problem, z);
  sol.achieved_order = detail::achieved(sol.residual, n_max);
  return sol;
}

template <class R>
struct PuiseuxSolution : PerturbationSolution<R> {
  // Series for y in u = mu^s y, and its residual in the rescaled equation.
  GaugeSeries<R> scaled_series;
  GaugeSeries<R> scaled_residual;
  int unknown_scale = 0;
  // The rescaled equation was divided by mu^divided_power.
  int divided_power = 0;
  AlgebraicProblem<R> scaled_problem;
};

// Refines eps = mu^d in every coefficient.
template <class R>
AlgebraicProblem<R> refine_problem(const AlgebraicProblem<R>& p, int d) {
  AlgebraicProblem<R> out{p.unknown, {}};
  for (const auto& c : p.coeffs) out.coeffs.push_back(gauge_refine(c, d));
  return out;
}

// Substitutes u = mu^s y and divides by the lowest resulting power of mu.
template <class R>
AlgebraicProblem<R> rescale_unknown(const AlgebraicProblem<R>& p, int s, int* divided = nullptr) {
  int m = std::numeric_limits<int>::max();
  for (int j = 0; j <= p.degree(); ++j)
    if (auto v = p.coeffs[static_cast<size_t>(j)].valuation()) m = std::min(m, *v + s * j);
  AlgebraicProblem<R> out{p.unknown == "u" ? "y" : p.unknown + "_scaled", {}};
  for (int j = 0; j <= p.degree(); ++j) out.coeffs.push_back(p.coeffs[static_cast<size_t>(j)].shift(s * j - m));
  if (divided) *divided = m;
  return out;
}

// Puiseux / singular branch: eps = mu^d, u = mu^s y, regular iteration for y
// from branch_root, residual reported in the original equation.
template <class R>
PuiseuxSolution<R> solve_puiseux(const AlgebraicProblem<R>& problem, int d, int unknown_scale,
                                 const R& branch_root, int n_max) {
  AlgebraicProblem<R> refined = refine_problem(problem, d);
  PuiseuxSolution<R> out;
  out.unknown_scale = unknown_scale;
  out.scaled_problem = rescale_unknown(refined, unknown_scale, &out.divided_power);
  PerturbationSolution<R> y = perturb_iterate(out.scaled_problem, branch_root, n_max);
  out.scaled_series = y.series;
  out.scaled_residual = y.residual;
  out.diagnostics = y.diagnostics;
  out.series = y.series.shift(unknown_scale);
  out.residual = residual_exact(refined, out.series);
  out.achieved_order = detail::achieved(out.residual, n_max + out.divided_power);
  return out;
}

// Square polynomial system with series coefficients over Q.
struct SystemTerm {
  std::vector<int> exponents;
  GaugeSeries<Rational> coeff;
};

struct SystemProblem {
  int n = 0;
  std::vector<std::string> unknowns;
  std::vector<std::vector<SystemTerm>> equations;

  void validate() const;
  std::vector<GaugeSeries<Rational>> evaluate(const std::vector<GaugeSeries<Rational>>& z) const;
  Matrix<Rational> jacobian_order0(const std::vector<Rational>& u0) const;
};

struct SystemRoot {
  std::vector<Rational> u0;
  Rational det;
  Matrix<Rational> jacobian;
  Matrix<Rational> jacobian_inverse;
};

struct SystemSolution {
  std::vector<GaugeSeries<Rational>> series;
  std::vector<GaugeSeries<Rational>> residual;
  int achieved_order = 0;
  SystemRoot root;
  std::vector<SolveRecord> diagnostics;
};

// Checks that u0 solves the eps = 0 system and has an invertible Jacobian.
// Throws NotARoot or SingularJacobian.
SystemRoot validate_system_root(const SystemProblem& spec, const std::vector<Rational>& u0);
std::vector<SystemRoot> solve_system_order0(const SystemProblem& spec,
                                            const std::vector<std::vector<Rational>>& candidates);
SystemSolution perturb_iterate(const SystemProblem& spec, const std::vector<Rational>& u0, int n_max);

// v1^2 + v2^2 - 1 - eps v1 v2 = 0, 25 v1 v2 - 12 + 2 eps v1 = 0.
SystemProblem circle_hyperbola_system();

}  // namespace pbe
