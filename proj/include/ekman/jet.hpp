#pragma once
// Forward-mode number types used by every closed-form evaluator.
//
// Jet: truncated Taylor expansion in (x, y, z, t). Carries the value, the four
// first partials and the six second spatial partials. Products involving t
// beyond first order are dropped, which is all the residual needs.
//
// Dual<T>: one extra infinitesimal on top of T, used for derivatives along the
// shore distance rho of functions that are themselves jets.

#include <array>
#include <cmath>
#include <type_traits>

namespace ekman {

enum Axis : int { AX = 0, AY = 1, AZ = 2, AT = 3 };

// second-derivative slots: xx yy zz xy xz yz
constexpr int hidx(int i, int j)
{
  if (i == j) return i;
  if (i > j) { int k = i; i = j; j = k; }
  if (i == 0) return j == 1 ? 3 : 4;
  return 5;
}

struct Jet {
  double v = 0.0;
  std::array<double, 4> d{};
  std::array<double, 6> h{};

  Jet() = default;
  Jet(double c) : v(c) {}

  static Jet variable(double value, int axis)
  {
    Jet j(value);
    j.d[axis] = 1.0;
    return j;
  }

  double hess(int i, int j) const { return h[hidx(i, j)]; }
  double lap() const { return h[0] + h[1] + h[2]; }

  Jet& operator+=(const Jet& o)
  {
    v += o.v;
    for (int i = 0; i < 4; ++i) d[i] += o.d[i];
    for (int i = 0; i < 6; ++i) h[i] += o.h[i];
    return *this;
  }
  Jet& operator-=(const Jet& o)
  {
    v -= o.v;
    for (int i = 0; i < 4; ++i) d[i] -= o.d[i];
    for (int i = 0; i < 6; ++i) h[i] -= o.h[i];
    return *this;
  }
  Jet& operator*=(double c)
  {
    v *= c;
    for (auto& x : d) x *= c;
    for (auto& x : h) x *= c;
    return *this;
  }
};

inline Jet operator-(Jet a) { a *= -1.0; return a; }
inline Jet operator+(Jet a, const Jet& b) { a += b; return a; }
inline Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
inline Jet operator+(Jet a, double c) { a.v += c; return a; }
inline Jet operator+(double c, Jet a) { a.v += c; return a; }
inline Jet operator-(Jet a, double c) { a.v -= c; return a; }
inline Jet operator-(double c, Jet a) { a *= -1.0; a.v += c; return a; }
inline Jet operator*(Jet a, double c) { a *= c; return a; }
inline Jet operator*(double c, Jet a) { a *= c; return a; }

inline Jet operator*(const Jet& a, const Jet& b)
{
  Jet r;
  r.v = a.v * b.v;
  for (int i = 0; i < 4; ++i) r.d[i] = a.v * b.d[i] + b.v * a.d[i];
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      int k = hidx(i, j);
      r.h[k] = a.v * b.h[k] + b.v * a.h[k] + a.d[i] * b.d[j] + a.d[j] * b.d[i];
    }
  return r;
}

// f(a) given f, f', f'' at a.v
inline Jet chain(const Jet& a, double f0, double f1, double f2)
{
  Jet r;
  r.v = f0;
  for (int i = 0; i < 4; ++i) r.d[i] = f1 * a.d[i];
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      int k = hidx(i, j);
      r.h[k] = f1 * a.h[k] + f2 * a.d[i] * a.d[j];
    }
  return r;
}

inline Jet inv(const Jet& a)
{
  double q = 1.0 / a.v;
  return chain(a, q, -q * q, 2.0 * q * q * q);
}
inline Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }
inline Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }
inline Jet operator/(double c, const Jet& b) { return c * inv(b); }

inline Jet exp(const Jet& a) { double e = std::exp(a.v); return chain(a, e, e, e); }
inline Jet log(const Jet& a) { return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Jet sin(const Jet& a) { double s = std::sin(a.v), c = std::cos(a.v); return chain(a, s, c, -s); }
inline Jet cos(const Jet& a) { double s = std::sin(a.v), c = std::cos(a.v); return chain(a, c, -s, -c); }
inline Jet sqrt(const Jet& a)
{
  double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet pow(const Jet& a, double p)
{
  double f0 = std::pow(a.v, p);
  return chain(a, f0, p * f0 / a.v, p * (p - 1.0) * f0 / (a.v * a.v));
}
inline Jet tanh(const Jet& a)
{
  double th = std::tanh(a.v), s = 1.0 - th * th;
  return chain(a, th, s, -2.0 * th * s);
}

template <class T>
struct Dual {
  T v{};
  T e{};
  Dual() = default;
  Dual(double c) requires(!std::is_same_v<T, double>) : v(c), e(0.0) {}
  Dual(const T& a) : v(a), e(0.0) {}
  Dual(const T& a, const T& b) : v(a), e(b) {}
};

template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.e}; }
template <class T> Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.e + b.e}; }
template <class T> Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.e - b.e}; }
template <class T> Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.v * b.e + a.e * b.v}; }
template <class T> Dual<T> operator/(const Dual<T>& a, const Dual<T>& b)
{
  T q = 1.0 / b.v;
  return {a.v * q, (a.e * b.v - a.v * b.e) * q * q};
}
template <class T> Dual<T> operator+(const Dual<T>& a, double c) { return {a.v + c, a.e}; }
template <class T> Dual<T> operator+(double c, const Dual<T>& a) { return {a.v + c, a.e}; }
template <class T> Dual<T> operator-(const Dual<T>& a, double c) { return {a.v - c, a.e}; }
template <class T> Dual<T> operator-(double c, const Dual<T>& a) { return {c - a.v, -a.e}; }
template <class T> Dual<T> operator*(const Dual<T>& a, double c) { return {a.v * c, a.e * c}; }
template <class T> Dual<T> operator*(double c, const Dual<T>& a) { return {a.v * c, a.e * c}; }
template <class T> Dual<T> operator/(const Dual<T>& a, double c) { return {a.v / c, a.e / c}; }
template <class T> Dual<T> operator/(double c, const Dual<T>& b)
{
  T q = 1.0 / b.v;
  return {c * q, -c * b.e * q * q};
}

template <class T> Dual<T> exp(const Dual<T>& a) { using std::exp; T ev = exp(a.v); return {ev, ev * a.e}; }
template <class T> Dual<T> log(const Dual<T>& a) { using std::log; return {log(a.v), a.e / a.v}; }
template <class T> Dual<T> sin(const Dual<T>& a) { using std::sin; using std::cos; return {sin(a.v), cos(a.v) * a.e}; }
template <class T> Dual<T> cos(const Dual<T>& a) { using std::sin; using std::cos; return {cos(a.v), -1.0 * sin(a.v) * a.e}; }
template <class T> Dual<T> sqrt(const Dual<T>& a) { using std::sqrt; T s = sqrt(a.v); return {s, a.e * (0.5 / s)}; }
template <class T> Dual<T> pow(const Dual<T>& a, double p)
{
  using std::pow;
  T f = pow(a.v, p - 1.0);
  return {f * a.v, p * f * a.e};
}
template <class T> Dual<T> tanh(const Dual<T>& a)
{
  using std::tanh;
  T th = tanh(a.v);
  return {th, (1.0 - th * th) * a.e};
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.v; }
template <class T> double value_of(const Dual<T>& x) { return value_of(x.v); }

// Taylor shift for functions known only through f(v), f'(v), f''(v).
inline double taylor2(double, double f0, double, double) { return f0; }
inline Jet taylor2(const Jet& a, double f0, double f1, double f2) { return chain(a, f0, f1, f2); }

}  // namespace ekman
