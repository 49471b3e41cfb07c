#include "pbe/cyclo.hpp"

#include <numeric>
#include <sstream>

#include "pbe/errors.hpp"

namespace pbe {

namespace {

int common_order(int a, int b) {
  if (a == b) return a;
  if (a == 1) return b;
  if (b == 1) return a;
  fail(ErrorCode::kRingMismatch,
       "cyclic rings of order " + std::to_string(a) + " and " + std::to_string(b));
}

// Dense univariate polynomial over Q, index = degree, no trailing zeros.
using Dense = std::vector<Rational>;

void trim(Dense& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Dense sub_mul(const Dense& a, const Dense& q, const Dense& b) {
  // a - q*b
  Dense out = a;
  if (q.empty() || b.empty()) return out;
  out.resize(std::max(a.size(), q.size() + b.size() - 1));
  for (size_t i = 0; i < q.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
  trim(out);
  return out;
}

void divmod(const Dense& a, const Dense& b, Dense& q, Dense& r) {
  r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational());
  const Rational& lead = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    size_t shift = r.size() - b.size();
    Rational c = r.back() / lead;
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    trim(r);
  }
  trim(q);
}

}  // namespace

CycloElement::CycloElement(int order, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (order < 1) fail(ErrorCode::kPrecondition, "cyclic ring order must be positive");
  if (static_cast<int>(coeffs_.size()) > order) {
    // fold alpha^k -> alpha^{k mod n}
    std::vector<Rational> folded(static_cast<size_t>(order));
    for (size_t k = 0; k < coeffs_.size(); ++k) folded[k % static_cast<size_t>(order)] += coeffs_[k];
    coeffs_ = std::move(folded);
  }
  coeffs_.resize(static_cast<size_t>(order));
}

CycloElement CycloElement::root_power(int order, int power, const Rational& scale) {
  std::vector<Rational> c(static_cast<size_t>(order));
  int p = ((power % order) + order) % order;
  c[static_cast<size_t>(p)] = scale;
  return CycloElement(order, std::move(c));
}

bool CycloElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool CycloElement::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return false;
  return true;
}

CycloElement CycloElement::lift(int new_order) const {
  int n = order();
  if (new_order == n) return *this;
  if (new_order % n != 0) fail(ErrorCode::kRingMismatch, "cannot lift cyclic element to this order");
  int k = new_order / n;
  std::vector<Rational> c(static_cast<size_t>(new_order));
  if (n == 1) {
    c[0] = coeffs_[0];
  } else {
    for (int i = 0; i < n; ++i) c[static_cast<size_t>(i * k)] = coeffs_[static_cast<size_t>(i)];
  }
  return CycloElement(new_order, std::move(c));
}

std::string CycloElement::str(std::string_view symbol) const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c.is_zero()) continue;
    Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.str();
      continue;
    }
    if (!mag.is_one()) os << mag.str() << "*";
    os << symbol;
    if (i > 1) os << "^" << i;
  }
  if (first) return "0";
  return os.str();
}

CycloElement& CycloElement::operator+=(const CycloElement& o) {
  int n = common_order(order(), o.order());
  if (order() != n) *this = lift(n);
  const CycloElement& b = o.order() == n ? o : o.lift(n);
  for (int i = 0; i < n; ++i) coeffs_[static_cast<size_t>(i)] += b.coeffs_[static_cast<size_t>(i)];
  return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& o) { return *this += -o; }

CycloElement& CycloElement::operator*=(const CycloElement& o) {
  int n = common_order(order(), o.order());
  if (o.order() == 1) {
    for (auto& c : coeffs_) c *= o.coeffs_[0];
    return *this;
  }
  if (order() == 1) {
    Rational s = coeffs_[0];
    *this = o;
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  std::vector<Rational> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Rational& a = coeffs_[static_cast<size_t>(i)];
    if (a.is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      const Rational& b = o.coeffs_[static_cast<size_t>(j)];
      if (b.is_zero()) continue;
      out[static_cast<size_t>((i + j) % n)] += a * b;
    }
  }
  coeffs_ = std::move(out);
  return *this;
}

CycloElement operator-(const CycloElement& a) {
  CycloElement r = a;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

bool operator==(const CycloElement& a, const CycloElement& b) {
  if (a.order() == b.order()) return a.coeffs_ == b.coeffs_;
  if (a.order() == 1 || b.order() == 1) {
    int n = std::max(a.order(), b.order());
    return a.lift(n).coeffs_ == b.lift(n).coeffs_;
  }
  return false;
}

CycloElement cyclo_inverse(const CycloElement& a) {
  if (a.is_zero()) fail(ErrorCode::kZeroInput, "inverse of zero");
  const int n = a.order();
  if (n == 1) return CycloElement(Rational(1) / a[0]);

  // Extended Euclid on (x^n - 1, a(x)), tracking the cofactor of a.
  Dense modulus(static_cast<size_t>(n) + 1);
  modulus[0] = Rational(-1);
  modulus[static_cast<size_t>(n)] = Rational(1);
  Dense r0 = modulus, r1(a.coeffs().begin(), a.coeffs().end());
  trim(r1);
  Dense t0, t1{Rational(1)};
  while (!r1.empty()) {
    Dense q, r;
    divmod(r0, r1, q, r);
    Dense t = sub_mul(t0, q, t1);
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  // r0 = gcd (up to scale); unit iff constant.
  if (r0.size() != 1)
    fail(ErrorCode::kZeroDivisor, a.str() + " shares a factor with alpha^" + std::to_string(n) + " - 1");
  Rational scale = Rational(1) / r0[0];
  std::vector<Rational> c(t0.begin(), t0.end());
  for (auto& x : c) x *= scale;
  return CycloElement(n, std::move(c));
}

bool is_unit(const CycloElement& a) {
  if (a.is_zero()) return false;
  try {
    (void)cyclo_inverse(a);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Rational as_rational(const CycloElement& a) {
  if (!a.is_rational()) fail(ErrorCode::kRingMismatch, "expected a rational, got " + a.str());
  return a[0];
}

std::pair<Rational, Rational> project_to_gaussian(const CycloElement& a) {
  const CycloElement b = a.order() == 1 ? a.lift(4) : a;
  if (b.order() != 4) fail(ErrorCode::kRingMismatch, "projection to Q(i) needs order 4");
  return {b[0] - b[2], b[1] - b[3]};
}

Rational specialize(const CycloElement& a, const Rational& value) {
  Rational sum, p(1);
  for (int i = 0; i < a.order(); ++i) {
    sum += a[i] * p;
    p *= value;
  }
  return sum;
}

}  // namespace pbe
