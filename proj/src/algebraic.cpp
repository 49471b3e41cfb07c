#include "pbe/algebraic.hpp"

namespace pbe {

namespace {

using QS = GaugeSeries<Rational>;

QS monomial_value(const std::vector<int>& e, const std::vector<QS>& z) {
  QS acc(Rational(1));
  for (size_t i = 0; i < e.size(); ++i) acc = acc * series_pow(z[i], e[i]);
  return acc;
}

std::string vector_str(const std::vector<Rational>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "]";
}

}  // namespace

void SystemProblem::validate() const {
  if (n < 1 || static_cast<int>(equations.size()) != n)
    fail(ErrorCode::kPrecondition, "system must be square");
  for (const auto& eq : equations)
    for (const auto& t : eq)
      if (static_cast<int>(t.exponents.size()) != n)
        fail(ErrorCode::kPrecondition, "monomial exponent vector has wrong length");
}

std::vector<QS> SystemProblem::evaluate(const std::vector<QS>& z) const {
  std::vector<QS> out;
  for (const auto& eq : equations) {
    QS acc;
    for (const auto& t : eq) acc = acc + t.coeff * monomial_value(t.exponents, z);
    out.push_back(acc);
  }
  return out;
}

Matrix<Rational> SystemProblem::jacobian_order0(const std::vector<Rational>& u0) const {
  Matrix<Rational> j(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (const auto& t : equations[static_cast<size_t>(i)]) {
      Rational c0 = t.coeff.coeff(0);
      if (c0.is_zero()) continue;
      for (int k = 0; k < n; ++k) {
        int ek = t.exponents[static_cast<size_t>(k)];
        if (ek == 0) continue;
        Rational term = c0 * Rational(ek);
        for (int m = 0; m < n; ++m) {
          int e = t.exponents[static_cast<size_t>(m)] - (m == k ? 1 : 0);
          term *= pow(u0[static_cast<size_t>(m)], e);
        }
        j[static_cast<size_t>(i)][static_cast<size_t>(k)] += term;
      }
    }
  }
  return j;
}

SystemRoot validate_system_root(const SystemProblem& spec, const std::vector<Rational>& u0) {
  spec.validate();
  if (static_cast<int>(u0.size()) != spec.n) fail(ErrorCode::kPrecondition, "root has wrong dimension");
  std::vector<QS> z;
  for (const auto& v : u0) z.push_back(QS(v));
  auto f = spec.evaluate(z);
  for (const auto& fi : f)
    if (!fi.coeff(0).is_zero())
      fail(ErrorCode::kNotARoot, vector_str(u0) + " does not solve the eps = 0 system");
  SystemRoot root;
  root.u0 = u0;
  root.jacobian = spec.jacobian_order0(u0);
  root.det = determinant(root.jacobian);
  if (root.det.is_zero()) fail(ErrorCode::kSingularJacobian, "Jacobian at " + vector_str(u0) + " is singular");
  root.jacobian_inverse = inverse_matrix(root.jacobian, ErrorCode::kSingularJacobian);
  return root;
}

std::vector<SystemRoot> solve_system_order0(const SystemProblem& spec,
                                            const std::vector<std::vector<Rational>>& candidates) {
  std::vector<SystemRoot> out;
  for (const auto& c : candidates) out.push_back(validate_system_root(spec, c));
  return out;
}

SystemSolution perturb_iterate(const SystemProblem& spec, const std::vector<Rational>& u0, int n_max) {
  SystemSolution sol;
  try {
    sol.root = validate_system_root(spec, u0);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNotARoot) fail(ErrorCode::kBadInitialTerm, e.what());
    if (e.code() == ErrorCode::kSingularJacobian) fail(ErrorCode::kSingularProblem, e.what());
    throw;
  }
  std::string symbol;
  for (const auto& eq : spec.equations)
    for (const auto& t : eq)
      if (!t.coeff.symbol().empty()) symbol = t.coeff.symbol();
  const size_t n = static_cast<size_t>(spec.n);
  std::vector<QS> z;
  for (const auto& v : u0) z.push_back(QS::exact(symbol, {v}));
  for (int k = 0; k < n_max; ++k) {
    std::vector<QS> zt;
    for (const auto& zi : z) zt.push_back(zi.truncate(k + 1));
    auto delta = spec.evaluate(zt);
    std::vector<Rational> rhs(n);
    for (size_t i = 0; i < n; ++i) rhs[i] = -delta[i].coeff(k + 1);
    std::vector<Rational> u(n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) u[i] += sol.root.jacobian_inverse[i][j] * rhs[j];
    sol.diagnostics.push_back({k + 1, vector_str(rhs), vector_str(u)});
    for (size_t i = 0; i < n; ++i) z[i] = z[i] + QS::monomial(symbol, k + 1, u[i]);
  }
  sol.series = z;
  sol.residual = spec.evaluate(z);
  int achieved = std::numeric_limits<int>::max();
  for (const auto& r : sol.residual) achieved = std::min(achieved, detail::achieved(r, n_max));
  sol.achieved_order = achieved;
  return sol;
}

SystemProblem circle_hyperbola_system() {
  auto c = [](std::vector<Rational> cs) { return QS::exact("eps", std::move(cs)); };
  SystemProblem p;
  p.n = 2;
  p.unknowns = {"v1", "v2"};
  p.equations = {
      {{{2, 0}, c({1})}, {{0, 2}, c({1})}, {{0, 0}, c({-1})}, {{1, 1}, c({0, -1})}},
      {{{1, 1}, c({25})}, {{0, 0}, c({-12})}, {{1, 0}, c({0, 2})}},
  };
  return p;
}

}  // namespace pbe
