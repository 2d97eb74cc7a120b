#pragma once
#include "ekman/jet.hpp"

namespace ekman {

// C-infinity step built from exp(-1/s): 0 for s <= 0, 1 for s >= 1.
template <class T>
T smooth_step(const T& s)
{
  using std::exp;
  double v = value_of(s);
  if (v <= 0.0) return T(0.0);
  if (v >= 1.0) return T(1.0);
  T a = exp(-1.0 / s);
  T b = exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

template <class T>
T smooth_step_prime(const T& s)
{
  using std::exp;
  double v = value_of(s);
  if (v <= 0.0 || v >= 1.0) return T(0.0);
  T a = exp(-1.0 / s);
  T b = exp(-1.0 / (1.0 - s));
  T q = 1.0 - s;
  T sum = a + b;
  return a * b * (1.0 / (s * s) + 1.0 / (q * q)) / (sum * sum);
}

}  // namespace ekman
