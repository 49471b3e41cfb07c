#include "pbe/rational.hpp"

#include "pbe/errors.hpp"

namespace pbe {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroInput: return "ZeroInput";
    case ErrorCode::kZeroDivisor: return "ZeroDivisor";
    case ErrorCode::kNotAUnit: return "NotAUnit";
    case ErrorCode::kRingMismatch: return "RingMismatch";
    case ErrorCode::kOrderExceeded: return "OrderExceeded";
    case ErrorCode::kPrecondition: return "PreconditionViolation";
    case ErrorCode::kCoarsen: return "CoarsenError";
    case ErrorCode::kSingularProblem: return "SingularProblem";
    case ErrorCode::kBadInitialTerm: return "BadInitialTerm";
    case ErrorCode::kSingularJacobian: return "SingularJacobian";
    case ErrorCode::kNotARoot: return "NotARoot";
    case ErrorCode::kInconsistentSecularity: return "InconsistentSecularity";
    case ErrorCode::kNotUnitAmplitude: return "NotUnitAmplitude";
    case ErrorCode::kUnsolvableFit: return "UnsolvableFit";
    case ErrorCode::kGaugeMismatch: return "GaugeMismatch";
    case ErrorCode::kDomain: return "DomainError";
    case ErrorCode::kTolerance: return "ToleranceNotReached";
  }
  return "Unknown";
}

Rational::Rational(long num, long den) {
  if (den == 0) fail(ErrorCode::kZeroDivisor, "rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) fail(ErrorCode::kZeroDivisor, "rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.back() == ' ') s.pop_back();
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  if (s.empty()) fail(ErrorCode::kPrecondition, "empty rational literal");
  auto valid_int = [](const std::string& t) {
    size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string n = s.substr(0, slash);
  std::string d = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(n) || !valid_int(d) || d[0] == '-' || d[0] == '+')
    fail(ErrorCode::kPrecondition, "not a rational literal: '" + s + "'");
  if (n[0] == '+') n.erase(n.begin());
  return Rational(mpz_class(n), mpz_class(d));
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(ErrorCode::kZeroDivisor, "division of rational by zero");
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) return Rational(1) / pow(base, -exponent);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f, mpz_class(1));
}

Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b, mpz_class(1));
}

Rational inverse(const Rational& r) {
  if (r.is_zero()) fail(ErrorCode::kNotAUnit, "0 has no inverse");
  return Rational(1) / r;
}

}  // namespace pbe
