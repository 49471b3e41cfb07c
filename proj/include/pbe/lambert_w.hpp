#pragma once

#include <cmath>
#include <limits>

#include "pbe/errors.hpp"

namespace pbe {

// Principal branch W0 by Halley iteration. T is any floating type with the
// usual math functions found by argument-dependent lookup.
template <class T>
T lambert_w(const T& x) {
  using std::abs;
  using std::exp;
  using std::log;
  using std::sqrt;
  const T one(1);
  const T e = exp(one);
  const T branch = -one / e;
  const T eps = std::numeric_limits<T>::epsilon();
  if (x < branch) {
    if (branch - x > 16 * eps) fail(ErrorCode::kDomain, "lambert_w argument below -1/e");
    return -one;
  }
  if (x == T(0)) return T(0);

  T w;
  if (x < T(-0.25)) {
    T p = sqrt(T(2) * (e * x + one));
    w = -one + p - p * p / T(3) + T(11) / T(72) * p * p * p;
  } else if (x < T(3)) {
    w = log(one + x) * (one - log(one + log(one + x)) / (T(2) + log(one + x)));
  } else {
    T l1 = log(x);
    T l2 = log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int iter = 0; iter < 100; ++iter) {
    T ew = exp(w);
    T f = w * ew - x;
    T wp1 = w + one;
    if (wp1 == T(0)) break;
    T step = f / (ew * wp1 - (w + T(2)) * f / (T(2) * wp1));
    w -= step;
    if (abs(step) <= T(4) * eps * (one + abs(w))) break;
  }
  return w;
}

}  // namespace pbe
