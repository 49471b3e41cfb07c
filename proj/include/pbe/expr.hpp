#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pbe/lambert_w.hpp"
#include "pbe/rational.hpp"

namespace pbe {

enum class ExprKind {
  kConstant,
  kVariable,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,
  kNeg,
  kSin,
  kCos,
  kTan,
  kExp,
  kLn,
  kSqrt,
  kLambertW,
};

class ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

// Immutable expression tree node. Constants are exact rationals unless built
// from a double; pow carries a rational exponent.
class ExprNode {
 public:
  ExprKind kind;
  Rational value;
  std::optional<double> inexact;
  std::string name;
  std::vector<Expr> children;

  bool is_constant() const { return kind == ExprKind::kConstant; }
  bool is_exact_constant() const { return kind == ExprKind::kConstant && !inexact; }
  double constant_value() const { return inexact ? *inexact : value.to_double(); }
};

Expr constant(const Rational& r);
Expr constant(double v);
Expr variable(const std::string& name);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& a, const Rational& exponent);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr tan(const Expr& a);
Expr exp(const Expr& a);
Expr ln(const Expr& a);
Expr sqrt(const Expr& a);
Expr lambert_w(const Expr& a);
// Composed from exp.
Expr sech(const Expr& a);
Expr tanh(const Expr& a);

inline Expr operator+(const Expr& a, const Rational& b) { return a + constant(b); }
inline Expr operator*(const Rational& a, const Expr& b) { return constant(a) * b; }

Expr expr_diff(const Expr& e, const std::string& var);
std::string to_string(const Expr& e);
size_t expr_size(const Expr& e);

// Linear program for repeated evaluation: unique nodes in dependency order.
class Tape {
 public:
  struct Instr {
    ExprKind kind;
    int a = -1;
    int b = -1;
    double value = 0.0;
    Rational exact;
    bool exact_constant = false;
  };

  Tape(const Expr& e, const std::vector<std::string>& variables);

  const std::vector<std::string>& variables() const { return variables_; }
  size_t size() const { return code_.size(); }

  double eval(const double* vars) const;
  double operator()(const std::vector<double>& vars) const { return eval(vars.data()); }
  // Same program in another floating type (e.g. a multiprecision float).
  template <class T>
  T eval_as(const T* vars) const;

 private:
  std::vector<std::string> variables_;
  std::vector<Instr> code_;
};

template <class T>
T Tape::eval_as(const T* vars) const {
  using std::cos;
  using std::exp;
  using std::log;
  using std::pow;
  using std::sin;
  using std::sqrt;
  using std::tan;
  std::vector<T> reg(code_.size());
  for (size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    const T* x = in.a >= 0 ? &reg[static_cast<size_t>(in.a)] : nullptr;
    const T* y = in.b >= 0 ? &reg[static_cast<size_t>(in.b)] : nullptr;
    T r;
    switch (in.kind) {
      case ExprKind::kConstant:
        r = in.exact_constant ? T(in.exact.num().get_str()) / T(in.exact.den().get_str()) : T(in.value);
        break;
      case ExprKind::kVariable: r = vars[in.a]; break;
      case ExprKind::kAdd: r = *x + *y; break;
      case ExprKind::kSub: r = *x - *y; break;
      case ExprKind::kMul: r = *x * *y; break;
      case ExprKind::kDiv: r = *x / *y; break;
      case ExprKind::kNeg: r = -*x; break;
      case ExprKind::kPow:
        if (in.exact.is_integer() && abs(in.exact) <= Rational(64)) {
          long n = in.exact.num().get_si();
          T base = n < 0 ? T(1) / *x : *x;
          T acc(1);
          for (long k = 0; k < (n < 0 ? -n : n); ++k) acc *= base;
          r = acc;
        } else if (in.exact == Rational(1, 2)) {
          r = sqrt(*x);
        } else {
          r = pow(*x, T(in.exact.num().get_str()) / T(in.exact.den().get_str()));
        }
        break;
      case ExprKind::kSin: r = sin(*x); break;
      case ExprKind::kCos: r = cos(*x); break;
      case ExprKind::kTan: r = tan(*x); break;
      case ExprKind::kExp: r = exp(*x); break;
      case ExprKind::kLn: r = log(*x); break;
      case ExprKind::kSqrt: r = sqrt(*x); break;
      case ExprKind::kLambertW: r = lambert_w(*x); break;
    }
    reg[i] = r;
  }
  return reg.back();
}

double eval(const Expr& e, const std::map<std::string, double>& env);

}  // namespace pbe
