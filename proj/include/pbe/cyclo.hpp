#pragma once

#include <string>
#include <vector>

#include "pbe/rational.hpp"

namespace pbe {

// Element of Q[alpha]/(alpha^n - 1): c0 + c1*alpha + ... + c_{n-1}*alpha^{n-1}.
// The ring is not a field; it models "some n-th root of unity, choice
// deferred". Order-1 elements are plain rationals and combine with any order.
class CycloElement {
 public:
  CycloElement() : coeffs_(1) {}
  CycloElement(const Rational& r) : coeffs_{r} {}  // NOLINT(google-explicit-constructor)
  CycloElement(int r) : coeffs_{Rational(r)} {}    // NOLINT
  CycloElement(int order, std::vector<Rational> coeffs);

  // alpha^power in the ring of the given order.
  static CycloElement root_power(int order, int power, const Rational& scale = Rational(1));

  int order() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& operator[](int i) const { return coeffs_[static_cast<size_t>(i)]; }

  bool is_zero() const;
  // True when the element is a rational (only the alpha^0 slot is nonzero).
  bool is_rational() const;
  // Re-embeds into a ring of order k*order(); alpha maps to beta^k.
  CycloElement lift(int new_order) const;

  std::string str(std::string_view symbol = "alpha") const;

  CycloElement& operator+=(const CycloElement& o);
  CycloElement& operator-=(const CycloElement& o);
  CycloElement& operator*=(const CycloElement& o);

  friend CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
  friend CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }
  friend CycloElement operator*(CycloElement a, const CycloElement& b) { return a *= b; }
  friend CycloElement operator-(const CycloElement& a);
  friend bool operator==(const CycloElement& a, const CycloElement& b);

 private:
  std::vector<Rational> coeffs_;
};

// Inverse by extended Euclid against alpha^n - 1.
// Throws ZeroInput for 0 and ZeroDivisor when gcd(a(x), x^n - 1) != 1.
CycloElement cyclo_inverse(const CycloElement& a);
bool is_unit(const CycloElement& a);
inline CycloElement inverse(const CycloElement& a) { return cyclo_inverse(a); }
inline bool is_zero(const CycloElement& a) { return a.is_zero(); }
inline std::string to_string(const CycloElement& a) { return a.str(); }

// Rational view of an order-1 element; throws RingMismatch otherwise.
Rational as_rational(const CycloElement& a);

// Projection alpha -> i of an order-4 element into Q(i): (re, im).
std::pair<Rational, Rational> project_to_gaussian(const CycloElement& a);

// Substitutes alpha = value (a rational root of unity image, e.g. +-1).
Rational specialize(const CycloElement& a, const Rational& value);

}  // namespace pbe
