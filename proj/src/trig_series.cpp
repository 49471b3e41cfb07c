#include "pbe/trig_series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pbe {

TrigSeries::TrigSeries(const Rational& c) {
  if (!c.is_zero()) terms_[0] = Harmonic{RatPoly(c), RatPoly()};
}

TrigSeries::TrigSeries(const RatPoly& p) {
  if (!p.is_zero()) {
    terms_[0] = Harmonic{p, RatPoly()};
    if (p.degree() > 0) symbol_ = p.symbol();
  }
}

TrigSeries TrigSeries::cos_term(const std::string& symbol, int h, const RatPoly& amp) {
  return from_terms(symbol, {{h, Harmonic{amp, RatPoly()}}});
}

TrigSeries TrigSeries::sin_term(const std::string& symbol, int h, const RatPoly& amp) {
  return from_terms(symbol, {{h, Harmonic{RatPoly(), amp}}});
}

TrigSeries TrigSeries::from_terms(const std::string& symbol, const std::map<int, Harmonic>& terms) {
  TrigSeries out;
  out.symbol_ = symbol;
  for (const auto& [h, hm] : terms) out.add(h, hm.cos_amp, hm.sin_amp);
  return out;
}

void TrigSeries::add(int h, const RatPoly& c, const RatPoly& s) {
  RatPoly sin_part = h < 0 ? -s : s;
  if (h < 0) h = -h;
  if (h == 0) sin_part = RatPoly();
  if (c.is_zero() && sin_part.is_zero()) return;
  Harmonic& slot = terms_[h];
  slot.cos_amp += c;
  slot.sin_amp += sin_part;
  if (slot.cos_amp.is_zero() && slot.sin_amp.is_zero()) terms_.erase(h);
}

void TrigSeries::adopt_symbol(const TrigSeries& o) {
  if (o.symbol_.empty()) return;
  if (symbol_.empty()) {
    symbol_ = o.symbol_;
  } else if (symbol_ != o.symbol_) {
    fail(ErrorCode::kRingMismatch, "trig series in '" + symbol_ + "' and '" + o.symbol_ + "'");
  }
}

Harmonic TrigSeries::harmonic(int h) const {
  auto it = terms_.find(h);
  return it == terms_.end() ? Harmonic{} : it->second;
}

int TrigSeries::amplitude_degree() const {
  int deg = -1;
  for (const auto& [h, hm] : terms_) deg = std::max({deg, hm.cos_amp.degree(), hm.sin_amp.degree()});
  return deg;
}

double TrigSeries::evaluate(double t) const {
  double acc = 0.0;
  for (const auto& [h, hm] : terms_) {
    double ht = static_cast<double>(h) * t;
    acc += hm.cos_amp.evaluate_double(t) * std::cos(ht);
    if (!hm.sin_amp.is_zero()) acc += hm.sin_amp.evaluate_double(t) * std::sin(ht);
  }
  return acc;
}

Rational TrigSeries::value_at_zero() const {
  Rational acc;
  for (const auto& [h, hm] : terms_) acc += hm.cos_amp.coeff(0);
  return acc;
}

TrigSeries& TrigSeries::operator+=(const TrigSeries& o) {
  adopt_symbol(o);
  for (const auto& [h, hm] : o.terms_) add(h, hm.cos_amp, hm.sin_amp);
  return *this;
}

TrigSeries operator-(const TrigSeries& a) {
  TrigSeries r = a;
  for (auto& [h, hm] : r.terms_) {
    hm.cos_amp = -hm.cos_amp;
    hm.sin_amp = -hm.sin_amp;
  }
  return r;
}

TrigSeries operator*(const TrigSeries& a, const TrigSeries& b) {
  TrigSeries out;
  out.symbol_ = a.symbol_;
  out.adopt_symbol(b);
  const RatPoly half(Rational(1, 2));
  for (const auto& [ha, ta] : a.terms_) {
    for (const auto& [hb, tb] : b.terms_) {
      int sum = ha + hb, diff = ha - hb;
      if (!ta.cos_amp.is_zero() && !tb.cos_amp.is_zero()) {
        RatPoly p = half * ta.cos_amp * tb.cos_amp;
        out.add(diff, p, RatPoly());
        out.add(sum, p, RatPoly());
      }
      if (!ta.sin_amp.is_zero() && !tb.sin_amp.is_zero()) {
        RatPoly p = half * ta.sin_amp * tb.sin_amp;
        out.add(diff, p, RatPoly());
        out.add(sum, -p, RatPoly());
      }
      if (!ta.sin_amp.is_zero() && !tb.cos_amp.is_zero()) {
        RatPoly p = half * ta.sin_amp * tb.cos_amp;
        out.add(sum, RatPoly(), p);
        out.add(diff, RatPoly(), p);
      }
      if (!ta.cos_amp.is_zero() && !tb.sin_amp.is_zero()) {
        RatPoly p = half * ta.cos_amp * tb.sin_amp;
        out.add(sum, RatPoly(), p);
        out.add(diff, RatPoly(), -p);
      }
    }
  }
  return out;
}

TrigSeries trig_mul(const TrigSeries& a, const TrigSeries& b) { return a * b; }

TrigSeries trig_diff(const TrigSeries& a) {
  std::map<int, Harmonic> terms;
  for (const auto& [h, hm] : a.terms()) {
    RatPoly hp{Rational(h)};
    terms[h] = Harmonic{hm.cos_amp.derivative() + hp * hm.sin_amp,
                        hm.sin_amp.derivative() - hp * hm.cos_amp};
  }
  return TrigSeries::from_terms(a.symbol(), terms);
}

std::string TrigSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const RatPoly& amp, const char* fn, int h) {
    if (amp.is_zero()) return;
    if (!first) os << " + ";
    first = false;
    if (h == 0) {
      os << amp.str();
      return;
    }
    std::string a = amp.str();
    if (a != "1") os << "(" << a << ")*";
    os << fn << "(";
    if (h != 1) os << h << "*";
    os << (symbol_.empty() ? "t" : symbol_) << ")";
  };
  for (const auto& [h, hm] : terms_) {
    emit(hm.cos_amp, "cos", h);
    emit(hm.sin_amp, "sin", h);
  }
  return os.str();
}

bool is_unit(const TrigSeries& a) {
  return a.terms().size() == 1 && a.max_harmonic() == 0 && is_unit(a.harmonic(0).cos_amp);
}

TrigSeries inverse(const TrigSeries& a) {
  if (!is_unit(a)) fail(ErrorCode::kNotAUnit, "trig series " + a.str() + " is not a constant");
  return TrigSeries(inverse(a.harmonic(0).cos_amp.coeff(0)));
}

}  // namespace pbe
