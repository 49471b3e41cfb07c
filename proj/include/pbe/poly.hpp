#pragma once

#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>

#include "pbe/cyclo.hpp"
#include "pbe/errors.hpp"
#include "pbe/rational.hpp"

namespace pbe {

namespace detail {
template <class C>
bool coeff_is_zero(const C& c) { return is_zero(c); }
}  // namespace detail

// Sparse univariate polynomial in a named symbol over a coefficient ring C
// (Rational or CycloElement). Zero coefficients are never stored. An empty
// symbol marks a constant that combines with a polynomial in any symbol.
template <class C>
class Poly {
 public:
  Poly() = default;
  Poly(const C& c) { if (!detail::coeff_is_zero(c)) terms_.emplace(0, c); }  // NOLINT
  Poly(int c) : Poly(C(c)) {}  // NOLINT
  Poly(std::string symbol, std::map<int, C> terms) : symbol_(std::move(symbol)) {
    for (auto& [d, c] : terms) {
      if (d < 0) fail(ErrorCode::kPrecondition, "negative polynomial degree");
      if (!detail::coeff_is_zero(c)) terms_.emplace(d, std::move(c));
    }
    if (degree() <= 0) symbol_.clear();
  }

  static Poly monomial(const std::string& symbol, int degree, const C& c = C(1)) {
    return Poly(symbol, {{degree, c}});
  }
  static Poly variable(const std::string& symbol) { return monomial(symbol, 1); }

  const std::string& symbol() const { return symbol_; }
  const std::map<int, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  C coeff(int d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? C() : it->second;
  }

  Poly derivative() const {
    Poly out;
    out.symbol_ = symbol_;
    for (const auto& [d, c] : terms_)
      if (d > 0) out.add_term(d - 1, c * C(Rational(d)));
    out.normalize_symbol();
    return out;
  }

  template <class V>
  V evaluate(const V& x) const {
    V acc{};
    int last = degree();
    for (int d = last; d >= 0; --d) {
      acc = acc * x;
      auto it = terms_.find(d);
      if (it != terms_.end()) acc = acc + V(it->second);
    }
    return acc;
  }

  double evaluate_double(double x) const
    requires std::is_same_v<C, Rational>
  {
    double acc = 0.0;
    for (int d = degree(); d >= 0; --d) {
      acc *= x;
      auto it = terms_.find(d);
      if (it != terms_.end()) acc += it->second.to_double();
    }
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    adopt_symbol(o);
    for (const auto& [d, c] : o.terms_) add_term(d, c);
    normalize_symbol();
    return *this;
  }
  Poly& operator-=(const Poly& o) { return *this += -o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& [d, c] : r.terms_) c = -c;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    out.symbol_ = a.symbol_;
    out.adopt_symbol(b);
    for (const auto& [da, ca] : a.terms_)
      for (const auto& [db, cb] : b.terms_) out.add_term(da + db, ca * cb);
    out.normalize_symbol();
    return out;
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (a.degree() > 0 && a.symbol_ != b.symbol_) return false;
    auto ib = b.terms_.begin();
    for (const auto& [d, c] : a.terms_) {
      if (ib->first != d || !(ib->second == c)) return false;
      ++ib;
    }
    return true;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      std::string cs = to_string(c);
      bool compound = cs.find(' ') != std::string::npos;
      if (d == 0) {
        os << cs;
        continue;
      }
      if (cs != "1") os << (compound ? "(" + cs + ")" : cs) << "*";
      os << symbol_;
      if (d > 1) os << "^" << d;
    }
    return os.str();
  }

 private:
  void add_term(int d, const C& c) {
    auto [it, inserted] = terms_.try_emplace(d, c);
    if (!inserted) it->second = it->second + c;
    if (detail::coeff_is_zero(it->second)) terms_.erase(it);
  }
  void adopt_symbol(const Poly& o) {
    if (o.degree() <= 0 || o.symbol_.empty()) return;
    if (symbol_.empty() || degree() <= 0) {
      symbol_ = o.symbol_;
    } else if (symbol_ != o.symbol_) {
      fail(ErrorCode::kRingMismatch, "polynomials in '" + symbol_ + "' and '" + o.symbol_ + "'");
    }
  }
  void normalize_symbol() {
    if (degree() <= 0) symbol_.clear();
  }

  std::string symbol_;
  std::map<int, C> terms_;
};

template <class C>
bool is_zero(const Poly<C>& p) { return p.is_zero(); }
template <class C>
std::string to_string(const Poly<C>& p) { return p.str(); }

template <class C>
bool is_unit(const Poly<C>& p) {
  return p.degree() == 0 && is_unit(p.coeff(0));
}

template <class C>
Poly<C> inverse(const Poly<C>& p) {
  if (p.degree() != 0) fail(ErrorCode::kNotAUnit, "non-constant polynomial " + p.str() + " has no inverse");
  return Poly<C>(inverse(p.coeff(0)));
}

using RatPoly = Poly<Rational>;
using CycloPoly = Poly<CycloElement>;

}  // namespace pbe
