#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pbe/errors.hpp"
#include "pbe/rational.hpp"

namespace pbe {

// Power series in a gauge variable mu with declared relation eps = mu^d.
//
// A series is either exact (a finite Laurent polynomial in mu, nothing
// neglected) or truncated at order N (coefficients known for exponents
// low..N, unknown beyond). Truncated arithmetic never claims coefficients it
// cannot know. Exponents may be negative so that an unknown rescaled as
// u = y/mu can be substituted into the original equation.
//
// R is any ring type with R() as zero, R(Rational) as the embedding of Q,
// +, -, *, ==, and free functions is_zero, is_unit, inverse, to_string.
template <class R>
class GaugeSeries {
 public:
  GaugeSeries() = default;
  GaugeSeries(const R& c) { set_exact({c}, 0); }  // NOLINT(google-explicit-constructor)
  GaugeSeries(int c) : GaugeSeries(R(Rational(c))) {}  // NOLINT

  // Finite series sum_j coeffs[j] mu^{low+j}.
  static GaugeSeries exact(std::string symbol, std::vector<R> coeffs, int d = 1, int low = 0) {
    GaugeSeries s;
    s.symbol_ = std::move(symbol);
    s.d_ = check_d(d);
    s.set_exact(std::move(coeffs), low);
    return s;
  }

  // Series known through mu^order; missing trailing coefficients are zero.
  static GaugeSeries truncated(std::string symbol, std::vector<R> coeffs, int order, int d = 1,
                               int low = 0) {
    if (order < low - 1) fail(ErrorCode::kPrecondition, "truncation order below the low exponent");
    GaugeSeries s;
    s.symbol_ = std::move(symbol);
    s.d_ = check_d(d);
    s.exact_ = false;
    s.low_ = low;
    s.order_ = order;
    coeffs.resize(static_cast<size_t>(order - low + 1));
    s.c_ = std::move(coeffs);
    return s;
  }

  static GaugeSeries monomial(std::string symbol, int power, const R& c = R(Rational(1)), int d = 1) {
    return exact(std::move(symbol), {c}, d, power);
  }

  const std::string& symbol() const { return symbol_; }
  int denominator() const { return d_; }
  bool is_exact() const { return exact_; }
  int low() const { return low_; }
  // Truncation order; for exact series the highest stored exponent.
  int order() const { return exact_ ? low_ + static_cast<int>(c_.size()) - 1 : order_; }
  int known_order() const { return exact_ ? std::numeric_limits<int>::max() : order_; }

  // [mu^k]; OrderExceeded when a truncated series does not know it.
  R coeff(int k) const {
    if (!exact_ && k > order_)
      fail(ErrorCode::kOrderExceeded, "coefficient mu^" + std::to_string(k) +
                                          " requested from a series truncated at mu^" +
                                          std::to_string(order_));
    if (k < low_ || k >= low_ + static_cast<int>(c_.size())) return R();
    return c_[static_cast<size_t>(k - low_)];
  }

  // Lowest exponent with a nonzero known coefficient.
  std::optional<int> valuation() const {
    for (size_t j = 0; j < c_.size(); ++j)
      if (!is_zero(c_[j])) return low_ + static_cast<int>(j);
    return std::nullopt;
  }

  bool is_zero_series() const { return !valuation().has_value(); }

  GaugeSeries truncate(int order) const {
    if (!exact_ && order >= order_) return *this;
    std::vector<R> cs;
    for (int k = low_; k <= order; ++k) cs.push_back(coeff(k));
    return truncated(symbol_, std::move(cs), std::max(order, low_ - 1), d_, low_);
  }

  // Same coefficients, truncation claim dropped (used for finite candidates).
  GaugeSeries as_exact() const { return exact(symbol_, c_, d_, low_); }

  // Multiplies by mu^m.
  GaugeSeries shift(int m) const {
    GaugeSeries s = *this;
    if (exact_ && c_.empty()) return s;
    s.low_ += m;
    if (!exact_) s.order_ += m;
    return s;
  }

  template <class F>
  auto map(F&& f) const -> GaugeSeries<decltype(f(std::declval<const R&>()))> {
    using S = decltype(f(std::declval<const R&>()));
    std::vector<S> cs;
    cs.reserve(c_.size());
    for (const auto& c : c_) cs.push_back(f(c));
    if (exact_) return GaugeSeries<S>::exact(symbol_, std::move(cs), d_, low_);
    return GaugeSeries<S>::truncated(symbol_, std::move(cs), order_, d_, low_);
  }

  // sum_k coeff(k) * mu^k with user conversion of coefficients.
  template <class V, class F>
  V evaluate(const V& mu, F&& to_value) const {
    V acc{};
    V one = V(1);
    V p = one;
    for (int k = 0; k < low_; ++k) p = p * mu;
    for (int k = 0; k > low_; --k) p = p / mu;
    for (const auto& c : c_) {
      acc = acc + to_value(c) * p;
      p = p * mu;
    }
    return acc;
  }

  GaugeSeries& operator+=(const GaugeSeries& o) { return *this = *this + o; }
  GaugeSeries& operator-=(const GaugeSeries& o) { return *this = *this - o; }
  GaugeSeries& operator*=(const GaugeSeries& o) { return *this = *this * o; }

  friend GaugeSeries operator+(const GaugeSeries& a0, const GaugeSeries& b0) {
    auto [a, b] = align(a0, b0);
    int lo = std::min(a.low_, b.low_);
    bool ex = a.exact_ && b.exact_;
    int hi = ex ? std::max(a.order(), b.order()) : std::min(a.known_order(), b.known_order());
    std::vector<R> cs;
    for (int k = lo; k <= hi; ++k) cs.push_back(a.coeff(k) + b.coeff(k));
    return ex ? exact(a.symbol_, std::move(cs), a.d_, lo)
              : truncated(a.symbol_, std::move(cs), hi, a.d_, lo);
  }
  friend GaugeSeries operator-(const GaugeSeries& a) {
    return a.map([](const R& c) { return -c; });
  }
  friend GaugeSeries operator-(const GaugeSeries& a, const GaugeSeries& b) { return a + (-b); }

  friend GaugeSeries operator*(const GaugeSeries& a0, const GaugeSeries& b0) {
    auto [a, b] = align(a0, b0);
    int lo = a.low_ + b.low_;
    bool ex = a.exact_ && b.exact_;
    int hi;
    if (ex) {
      hi = a.order() + b.order();
    } else {
      long ha = a.exact_ ? std::numeric_limits<int>::max() : long(a.order_) + b.low_;
      long hb = b.exact_ ? std::numeric_limits<int>::max() : long(b.order_) + a.low_;
      hi = static_cast<int>(std::min(ha, hb));
    }
    std::vector<R> cs(static_cast<size_t>(std::max(hi - lo + 1, 0)));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        size_t k = i + j;
        if (k >= cs.size()) break;
        if (is_zero(b.c_[j])) continue;
        cs[k] = cs[k] + a.c_[i] * b.c_[j];
      }
    }
    return ex ? exact(a.symbol_, std::move(cs), a.d_, lo)
              : truncated(a.symbol_, std::move(cs), hi, a.d_, lo);
  }

  friend bool operator==(const GaugeSeries& a0, const GaugeSeries& b0) {
    if (a0.exact_ != b0.exact_) return false;
    auto [a, b] = align(a0, b0);
    if (!a.exact_ && a.order_ != b.order_) return false;
    int lo = std::min(a.low_, b.low_);
    int hi = std::max(a.order(), b.order());
    for (int k = lo; k <= hi; ++k)
      if (!(a.coeff(k) == b.coeff(k))) return false;
    return true;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
      if (is_zero(c_[j])) continue;
      int k = low_ + static_cast<int>(j);
      if (!first) os << " + ";
      first = false;
      std::string cs = to_string(c_[j]);
      if (k == 0) {
        os << cs;
        continue;
      }
      bool compound = cs.find(' ') != std::string::npos || cs.find('*') != std::string::npos;
      if (cs != "1") os << (compound ? "(" + cs + ")" : cs) << "*";
      os << (symbol_.empty() ? "mu" : symbol_);
      if (k != 1) os << "^" << k;
    }
    if (first) os << "0";
    if (!exact_) os << " + O(" << (symbol_.empty() ? "mu" : symbol_) << "^" << order_ + 1 << ")";
    return os.str();
  }

  // Brings two operands to a common symbol and gauge (lcm of d).
  static std::pair<GaugeSeries, GaugeSeries> align(const GaugeSeries& a, const GaugeSeries& b);

 private:
  template <class>
  friend class GaugeSeries;

  static int check_d(int d) {
    if (d < 1) fail(ErrorCode::kPrecondition, "gauge denominator must be >= 1");
    return d;
  }

  void set_exact(std::vector<R> coeffs, int low) {
    exact_ = true;
    size_t first = 0;
    while (first < coeffs.size() && is_zero(coeffs[first])) ++first;
    size_t last = coeffs.size();
    while (last > first && is_zero(coeffs[last - 1])) --last;
    if (first == last) {
      c_.clear();
      low_ = 0;
      return;
    }
    c_.assign(std::make_move_iterator(coeffs.begin() + static_cast<long>(first)),
              std::make_move_iterator(coeffs.begin() + static_cast<long>(last)));
    low_ = low + static_cast<int>(first);
  }

  // A series with no symbol and only a mu^0 term is a constant.
  bool is_symbol_free() const { return symbol_.empty() && low_ >= 0 && order() <= 0; }

  std::string symbol_;
  int d_ = 1;
  bool exact_ = true;
  int low_ = 0;
  int order_ = 0;
  std::vector<R> c_;
};

template <class R>
GaugeSeries<R> gauge_refine(const GaugeSeries<R>& a, int d) {
  if (d < 1) fail(ErrorCode::kPrecondition, "gauge_refine needs d >= 1");
  if (d == 1) return a;
  std::vector<R> cs;
  int lo = a.low() * d;
  int hi = a.is_exact() ? a.order() * d : a.known_order() * d;
  for (int k = lo; k <= hi; ++k) cs.push_back(k % d == 0 ? a.coeff(k / d) : R());
  if (a.is_exact()) return GaugeSeries<R>::exact(a.symbol(), std::move(cs), a.denominator() * d, lo);
  return GaugeSeries<R>::truncated(a.symbol(), std::move(cs), hi, a.denominator() * d, lo);
}

// Inverse of gauge_refine; CoarsenError when an exponent that is not a
// multiple of d carries a nonzero coefficient.
template <class R>
GaugeSeries<R> gauge_coarsen(const GaugeSeries<R>& a, int d) {
  if (d < 1 || a.denominator() % d != 0)
    fail(ErrorCode::kCoarsen, "cannot coarsen gauge d=" + std::to_string(a.denominator()) +
                                  " by " + std::to_string(d));
  if (d == 1) return a;
  auto floor_div = [d](int k) { return k >= 0 ? k / d : -((-k + d - 1) / d); };
  int lo = floor_div(a.low());
  int hi = floor_div(a.order());
  std::vector<R> cs;
  for (int k = a.low(); k <= a.order(); ++k) {
    R c = a.coeff(k);
    if (k % d != 0) {
      if (!is_zero(c))
        fail(ErrorCode::kCoarsen, "nonzero coefficient at mu^" + std::to_string(k));
      continue;
    }
  }
  for (int k = lo; k <= hi; ++k) cs.push_back(a.coeff(k * d));
  if (a.is_exact()) return GaugeSeries<R>::exact(a.symbol(), std::move(cs), a.denominator() / d, lo);
  return GaugeSeries<R>::truncated(a.symbol(), std::move(cs), hi, a.denominator() / d, lo);
}

template <class R>
std::pair<GaugeSeries<R>, GaugeSeries<R>> GaugeSeries<R>::align(const GaugeSeries& a,
                                                                const GaugeSeries& b) {
  std::string sym = a.symbol_;
  if (sym.empty()) {
    sym = b.symbol_;
  } else if (!b.symbol_.empty() && b.symbol_ != sym) {
    fail(ErrorCode::kGaugeMismatch, "series in '" + a.symbol_ + "' and '" + b.symbol_ + "'");
  }
  GaugeSeries x = a, y = b;
  x.symbol_ = sym;
  y.symbol_ = sym;
  if (x.d_ != y.d_) {
    if (a.is_symbol_free()) {
      x.d_ = y.d_;
    } else if (b.is_symbol_free()) {
      y.d_ = x.d_;
    } else {
      int l = std::lcm(x.d_, y.d_);
      x = gauge_refine(x, l / x.d_);
      y = gauge_refine(y, l / y.d_);
    }
  }
  return {std::move(x), std::move(y)};
}

template <class R>
R series_coeff(const GaugeSeries<R>& a, int k) {
  return a.coeff(k);
}

template <class R>
GaugeSeries<R> series_mul(const GaugeSeries<R>& a, const GaugeSeries<R>& b) {
  return a * b;
}

namespace detail {

template <class R>
int relative_order(const GaugeSeries<R>& a, int val, std::optional<int> order) {
  if (!a.is_exact()) return a.known_order() - val;
  if (!order) return std::numeric_limits<int>::max();
  return *order - val;
}

inline int resolve_order(int computed, std::optional<int> requested, const char* what) {
  if (requested) return std::min(computed, *requested);
  if (computed == std::numeric_limits<int>::max())
    fail(ErrorCode::kPrecondition, std::string(what) + " of exact series needs an explicit order");
  return computed;
}

}  // namespace detail

// q with q*b = a through the truncation order. For exact operands the order
// must be given.
template <class R>
GaugeSeries<R> series_div(const GaugeSeries<R>& a0, const GaugeSeries<R>& b0,
                          std::optional<int> order = std::nullopt) {
  auto [a, b] = GaugeSeries<R>::align(a0, b0);
  auto vb = b.valuation();
  if (!vb) fail(ErrorCode::kNotAUnit, "division by a zero series");
  R lead = b.coeff(*vb);
  if (!is_unit(lead)) fail(ErrorCode::kNotAUnit, "leading coefficient " + to_string(lead) + " is not a unit");
  R inv = inverse(lead);
  int la = a.low();
  int shift = la - *vb;
  long rel_a = a.is_exact() ? std::numeric_limits<int>::max() : long(a.known_order()) - la;
  long rel_b = b.is_exact() ? std::numeric_limits<int>::max() : long(b.known_order()) - *vb;
  int rel = static_cast<int>(std::min(rel_a, rel_b));
  std::optional<int> req;
  if (order) req = *order - shift;
  rel = detail::resolve_order(rel, req, "division");
  std::vector<R> q(static_cast<size_t>(std::max(rel + 1, 0)));
  for (int n = 0; n <= rel; ++n) {
    R acc = a.coeff(la + n);
    for (int j = 1; j <= n; ++j) {
      R bj = b.coeff(*vb + j);
      if (!is_zero(bj)) acc = acc - bj * q[static_cast<size_t>(n - j)];
    }
    q[static_cast<size_t>(n)] = acc * inv;
  }
  return GaugeSeries<R>::truncated(a.symbol(), std::move(q), shift + rel, a.denominator(), shift);
}

// exp(a) for a with no terms at mu^k, k <= 0.
template <class R>
GaugeSeries<R> series_exp(const GaugeSeries<R>& a, std::optional<int> order = std::nullopt) {
  if (auto v = a.valuation(); v && *v <= 0)
    fail(ErrorCode::kPrecondition, "series_exp needs a zero constant term");
  int n_max = detail::resolve_order(a.known_order(), order, "exp");
  std::vector<R> e(static_cast<size_t>(n_max + 1));
  e[0] = R(Rational(1));
  for (int n = 1; n <= n_max; ++n) {
    R acc;
    for (int k = 1; k <= n; ++k) {
      R ak = a.coeff(k);
      if (!is_zero(ak)) acc = acc + R(Rational(k)) * ak * e[static_cast<size_t>(n - k)];
    }
    e[static_cast<size_t>(n)] = R(Rational(1, n)) * acc;
  }
  return GaugeSeries<R>::truncated(a.symbol(), std::move(e), n_max, a.denominator(), 0);
}

// log(a) for a with constant term 1 and no negative powers.
template <class R>
GaugeSeries<R> series_log(const GaugeSeries<R>& a, std::optional<int> order = std::nullopt) {
  if (auto v = a.valuation(); !v || *v < 0 || !(a.coeff(0) == R(Rational(1))))
    fail(ErrorCode::kPrecondition, "series_log needs constant term 1");
  int n_max = detail::resolve_order(a.known_order(), order, "log");
  std::vector<R> l(static_cast<size_t>(n_max + 1));
  for (int n = 1; n <= n_max; ++n) {
    R acc;
    for (int k = 1; k < n; ++k) {
      R ank = a.coeff(n - k);
      if (!is_zero(ank)) acc = acc + R(Rational(k)) * l[static_cast<size_t>(k)] * ank;
    }
    l[static_cast<size_t>(n)] = a.coeff(n) - R(Rational(1, n)) * acc;
  }
  return GaugeSeries<R>::truncated(a.symbol(), std::move(l), n_max, a.denominator(), 0);
}

// a^k for k >= 0 by repeated squaring.
template <class R>
GaugeSeries<R> series_pow(GaugeSeries<R> a, int k) {
  if (k < 0) fail(ErrorCode::kPrecondition, "series_pow needs k >= 0");
  GaugeSeries<R> out(R(Rational(1)));
  while (k > 0) {
    if (k & 1) out = out * a;
    k >>= 1;
    if (k) a = a * a;
  }
  return out;
}

template <class R>
bool is_zero(const GaugeSeries<R>& a) { return a.is_zero_series(); }
template <class R>
std::string to_string(const GaugeSeries<R>& a) { return a.str(); }

}  // namespace pbe
