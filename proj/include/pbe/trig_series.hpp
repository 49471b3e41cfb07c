#pragma once

#include <map>
#include <string>
#include <utility>

#include "pbe/poly.hpp"

namespace pbe {

// One harmonic of a Poisson series: p(t) cos(h t) + q(t) sin(h t).
struct Harmonic {
  RatPoly cos_amp;
  RatPoly sin_amp;
  friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

// Finite Poisson series sum_h p_h(t) cos(h t) + q_h(t) sin(h t) over one base
// frequency. Harmonics are non-negative, h = 0 has no sine part and all-zero
// harmonics are dropped, so equality is structural.
class TrigSeries {
 public:
  TrigSeries() = default;
  TrigSeries(const Rational& c);  // NOLINT(google-explicit-constructor)
  TrigSeries(int c) : TrigSeries(Rational(c)) {}  // NOLINT
  TrigSeries(const RatPoly& p);  // NOLINT: constant harmonic with polynomial amplitude

  static TrigSeries cos_term(const std::string& symbol, int h, const RatPoly& amp = RatPoly(1));
  static TrigSeries sin_term(const std::string& symbol, int h, const RatPoly& amp = RatPoly(1));
  // sum_h terms; negative h is folded with cos(-x)=cos x, sin(-x)=-sin x.
  static TrigSeries from_terms(const std::string& symbol, const std::map<int, Harmonic>& terms);

  const std::string& symbol() const { return symbol_; }
  const std::map<int, Harmonic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Harmonic harmonic(int h) const;
  int max_harmonic() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  // Highest polynomial degree over all amplitudes (-1 for zero).
  int amplitude_degree() const;

  double evaluate(double t) const;
  // Exact value at t = 0.
  Rational value_at_zero() const;

  TrigSeries& operator+=(const TrigSeries& o);
  TrigSeries& operator-=(const TrigSeries& o) { return *this += -o; }
  TrigSeries& operator*=(const TrigSeries& o) { return *this = *this * o; }
  friend TrigSeries operator+(TrigSeries a, const TrigSeries& b) { return a += b; }
  friend TrigSeries operator-(TrigSeries a, const TrigSeries& b) { return a -= b; }
  friend TrigSeries operator-(const TrigSeries& a);
  friend TrigSeries operator*(const TrigSeries& a, const TrigSeries& b);
  friend bool operator==(const TrigSeries& a, const TrigSeries& b) { return a.terms_ == b.terms_; }

  std::string str() const;

 private:
  void add(int h, const RatPoly& c, const RatPoly& s);
  void adopt_symbol(const TrigSeries& o);

  std::string symbol_;
  std::map<int, Harmonic> terms_;
};

TrigSeries trig_mul(const TrigSeries& a, const TrigSeries& b);
TrigSeries trig_diff(const TrigSeries& a);

inline bool is_zero(const TrigSeries& a) { return a.is_zero(); }
inline std::string to_string(const TrigSeries& a) { return a.str(); }
// Only nonzero constants are units.
bool is_unit(const TrigSeries& a);
TrigSeries inverse(const TrigSeries& a);

}  // namespace pbe
