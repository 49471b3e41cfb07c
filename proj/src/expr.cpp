#include "pbe/expr.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "pbe/errors.hpp"

namespace pbe {

namespace {

Expr make(ExprKind kind, std::vector<Expr> children, Rational value = Rational()) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->value = std::move(value);
  n->children = std::move(children);
  return n;
}

bool is_exact(const Expr& e, const Rational& v) { return e->is_exact_constant() && e->value == v; }

const Expr& zero() {
  static const Expr z = constant(Rational(0));
  return z;
}
const Expr& one() {
  static const Expr o = constant(Rational(1));
  return o;
}

}  // namespace

Expr constant(const Rational& r) { return make(ExprKind::kConstant, {}, r); }

Expr constant(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::kConstant;
  n->inexact = v;
  return n;
}

Expr variable(const std::string& name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::kVariable;
  n->name = name;
  return n;
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a->is_exact_constant() && b->is_exact_constant()) return constant(a->value + b->value);
  if (is_exact(a, 0)) return b;
  if (is_exact(b, 0)) return a;
  return make(ExprKind::kAdd, {a, b});
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a->is_exact_constant() && b->is_exact_constant()) return constant(a->value - b->value);
  if (is_exact(b, 0)) return a;
  if (is_exact(a, 0)) return -b;
  return make(ExprKind::kSub, {a, b});
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a->is_exact_constant() && b->is_exact_constant()) return constant(a->value * b->value);
  if (is_exact(a, 0) || is_exact(b, 0)) return zero();
  if (is_exact(a, 1)) return b;
  if (is_exact(b, 1)) return a;
  if (is_exact(a, -1)) return -b;
  if (is_exact(b, -1)) return -a;
  return make(ExprKind::kMul, {a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (is_exact(b, 0)) fail(ErrorCode::kZeroDivisor, "expression divided by exact zero");
  if (a->is_exact_constant() && b->is_exact_constant()) return constant(a->value / b->value);
  if (is_exact(a, 0)) return zero();
  if (is_exact(b, 1)) return a;
  return make(ExprKind::kDiv, {a, b});
}

Expr operator-(const Expr& a) {
  if (a->is_exact_constant()) return constant(-a->value);
  if (a->kind == ExprKind::kNeg) return a->children[0];
  return make(ExprKind::kNeg, {a});
}

Expr pow(const Expr& a, const Rational& exponent) {
  if (exponent.is_zero()) return one();
  if (exponent.is_one()) return a;
  if (a->is_exact_constant() && exponent.is_integer() && !(a->value.is_zero() && exponent.sign() < 0))
    return constant(pbe::pow(a->value, static_cast<int>(exponent.num().get_si())));
  return make(ExprKind::kPow, {a}, exponent);
}

Expr sin(const Expr& a) { return is_exact(a, 0) ? zero() : make(ExprKind::kSin, {a}); }
Expr cos(const Expr& a) { return is_exact(a, 0) ? one() : make(ExprKind::kCos, {a}); }
Expr tan(const Expr& a) { return is_exact(a, 0) ? zero() : make(ExprKind::kTan, {a}); }
Expr exp(const Expr& a) { return is_exact(a, 0) ? one() : make(ExprKind::kExp, {a}); }
Expr ln(const Expr& a) { return is_exact(a, 1) ? zero() : make(ExprKind::kLn, {a}); }
Expr sqrt(const Expr& a) {
  if (is_exact(a, 0) || is_exact(a, 1)) return a;
  return make(ExprKind::kSqrt, {a});
}
Expr lambert_w(const Expr& a) { return is_exact(a, 0) ? zero() : make(ExprKind::kLambertW, {a}); }

Expr sech(const Expr& a) {
  return constant(Rational(2)) / (exp(a) + exp(-a));
}

Expr tanh(const Expr& a) {
  Expr p = exp(a), m = exp(-a);
  return (p - m) / (p + m);
}

Expr expr_diff(const Expr& e, const std::string& var) {
  std::unordered_map<const ExprNode*, Expr> memo;
  std::function<Expr(const Expr&)> d = [&](const Expr& n) -> Expr {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    const auto& c = n->children;
    Expr r;
    switch (n->kind) {
      case ExprKind::kConstant: r = zero(); break;
      case ExprKind::kVariable: r = n->name == var ? one() : zero(); break;
      case ExprKind::kAdd: r = d(c[0]) + d(c[1]); break;
      case ExprKind::kSub: r = d(c[0]) - d(c[1]); break;
      case ExprKind::kMul: r = d(c[0]) * c[1] + c[0] * d(c[1]); break;
      case ExprKind::kDiv: {
        Expr da = d(c[0]), db = d(c[1]);
        r = da / c[1] - c[0] * db / pow(c[1], Rational(2));
        break;
      }
      case ExprKind::kNeg: r = -d(c[0]); break;
      case ExprKind::kPow:
        r = constant(n->value) * pow(c[0], n->value - Rational(1)) * d(c[0]);
        break;
      case ExprKind::kSin: r = cos(c[0]) * d(c[0]); break;
      case ExprKind::kCos: r = -(sin(c[0]) * d(c[0])); break;
      case ExprKind::kTan: r = (one() + pow(n, Rational(2))) * d(c[0]); break;
      case ExprKind::kExp: r = n * d(c[0]); break;
      case ExprKind::kLn: r = d(c[0]) / c[0]; break;
      case ExprKind::kSqrt: r = d(c[0]) / (constant(Rational(2)) * n); break;
      case ExprKind::kLambertW:
        // W' = e^{-W} / (1 + W), finite at u = 0.
        r = d(c[0]) * exp(-n) / (one() + n);
        break;
    }
    memo.emplace(n.get(), r);
    return r;
  };
  return d(e);
}

std::string to_string(const Expr& e) {
  const auto& c = e->children;
  auto un = [&](const char* f) { return std::string(f) + "(" + to_string(c[0]) + ")"; };
  auto bin = [&](const char* op) { return "(" + to_string(c[0]) + " " + op + " " + to_string(c[1]) + ")"; };
  switch (e->kind) {
    case ExprKind::kConstant: {
      if (e->inexact) {
        std::ostringstream os;
        os.precision(17);
        os << *e->inexact;
        return os.str();
      }
      return e->value.str();
    }
    case ExprKind::kVariable: return e->name;
    case ExprKind::kAdd: return bin("+");
    case ExprKind::kSub: return bin("-");
    case ExprKind::kMul: return bin("*");
    case ExprKind::kDiv: return bin("/");
    case ExprKind::kNeg: return "-" + to_string(c[0]);
    case ExprKind::kPow: return "(" + to_string(c[0]) + ")^(" + e->value.str() + ")";
    case ExprKind::kSin: return un("sin");
    case ExprKind::kCos: return un("cos");
    case ExprKind::kTan: return un("tan");
    case ExprKind::kExp: return un("exp");
    case ExprKind::kLn: return un("ln");
    case ExprKind::kSqrt: return un("sqrt");
    case ExprKind::kLambertW: return un("W");
  }
  return "?";
}

size_t expr_size(const Expr& e) {
  std::unordered_set<const ExprNode*> seen;
  std::function<void(const Expr&)> walk = [&](const Expr& n) {
    if (!seen.insert(n.get()).second) return;
    for (const auto& c : n->children) walk(c);
  };
  walk(e);
  return seen.size();
}

Tape::Tape(const Expr& e, const std::vector<std::string>& variables) : variables_(variables) {
  std::unordered_map<const ExprNode*, int> slot;
  std::function<int(const Expr&)> emit = [&](const Expr& n) -> int {
    if (auto it = slot.find(n.get()); it != slot.end()) return it->second;
    Instr in;
    in.kind = n->kind;
    if (n->children.size() > 0) in.a = emit(n->children[0]);
    if (n->children.size() > 1) in.b = emit(n->children[1]);
    switch (n->kind) {
      case ExprKind::kConstant:
        in.value = n->constant_value();
        in.exact = n->value;
        in.exact_constant = !n->inexact;
        break;
      case ExprKind::kVariable: {
        auto it = std::find(variables_.begin(), variables_.end(), n->name);
        if (it == variables_.end()) fail(ErrorCode::kPrecondition, "unbound variable " + n->name);
        in.a = static_cast<int>(it - variables_.begin());
        break;
      }
      case ExprKind::kPow:
        in.exact = n->value;
        in.value = n->value.to_double();
        break;
      default: break;
    }
    code_.push_back(std::move(in));
    int id = static_cast<int>(code_.size()) - 1;
    slot.emplace(n.get(), id);
    return id;
  };
  emit(e);
}

double Tape::eval(const double* vars) const {
  std::vector<double> reg(code_.size());
  for (size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    double x = in.a >= 0 && in.kind != ExprKind::kVariable ? reg[static_cast<size_t>(in.a)] : 0.0;
    double y = in.b >= 0 ? reg[static_cast<size_t>(in.b)] : 0.0;
    double r = 0.0;
    switch (in.kind) {
      case ExprKind::kConstant: r = in.value; break;
      case ExprKind::kVariable: r = vars[in.a]; break;
      case ExprKind::kAdd: r = x + y; break;
      case ExprKind::kSub: r = x - y; break;
      case ExprKind::kMul: r = x * y; break;
      case ExprKind::kDiv: r = x / y; break;
      case ExprKind::kNeg: r = -x; break;
      case ExprKind::kPow:
        if (in.exact.is_integer() && in.value >= -64 && in.value <= 64) {
          long n = static_cast<long>(in.value);
          double base = n < 0 ? 1.0 / x : x;
          double acc = 1.0;
          for (long k = 0; k < (n < 0 ? -n : n); ++k) acc *= base;
          r = acc;
        } else {
          r = std::pow(x, in.value);
        }
        break;
      case ExprKind::kSin: r = std::sin(x); break;
      case ExprKind::kCos: r = std::cos(x); break;
      case ExprKind::kTan: r = std::tan(x); break;
      case ExprKind::kExp: r = std::exp(x); break;
      case ExprKind::kLn: r = std::log(x); break;
      case ExprKind::kSqrt: r = std::sqrt(x); break;
      case ExprKind::kLambertW: r = lambert_w(x); break;
    }
    reg[i] = r;
  }
  return reg.back();
}

double eval(const Expr& e, const std::map<std::string, double>& env) {
  std::vector<std::string> names;
  std::vector<double> vals;
  for (const auto& [k, v] : env) {
    names.push_back(k);
    vals.push_back(v);
  }
  return Tape(e, names)(vals);
}

}  // namespace pbe
