#pragma once
#include <vector>

#include "ekman/jet.hpp"
#include "ekman/smooth.hpp"

namespace ekman {

// chi = 1 on [0, 1/2], 0 on [1, inf), smooth in between.
struct CutoffChi {
  template <class T>
  static T chi(const T& x)
  {
    return 1.0 - smooth_step(2.0 * x - 1.0);
  }
  template <class T>
  static T chi_prime(const T& x)
  {
    return -2.0 * smooth_step_prime(2.0 * x - 1.0);
  }
  static double chi_second(double x)
  {
    return chi_prime(Dual<double>(x, 1.0)).e;
  }
};

// Vertical cut-off for the order-one layer correctors.
// k = chi1 + c b with chi1 rising from 0 at -2 to 1 at -1 and b a bump on
// (-2, -1) peaking at -1.5; c makes the integral of k vanish.
class CutoffK {
 public:
  static constexpr double foot = -2.0;
  static constexpr double plateau_end = -1.0;
  static constexpr double bump_mid = -1.5;
  // int chi1 = 1 + 1/2, int b = 1/4 + 1/4 (S(u) + S(1-u) = 1)
  static constexpr double c_bump = -3.0;

  template <class T>
  static T chi1(const T& z)
  {
    return smooth_step(z - foot);
  }
  template <class T>
  static T bump(const T& z)
  {
    return smooth_step(2.0 * (z - foot)) * smooth_step(2.0 * (plateau_end - z));
  }
  template <class T>
  static T k(const T& z)
  {
    return chi1(z) + c_bump * bump(z);
  }
  static double k_prime(double z) { return k(Dual<double>(z, 1.0)).e; }

  // K(zeta) = int_zeta^0 k; K' = -k
  static double K_value(double z);
  template <class T>
  static T K(const T& z)
  {
    double v = value_of(z);
    Dual<double> kd = k(Dual<double>(v, 1.0));
    return taylor2(z, K_value(v), -kd.v, -kd.e);
  }
  // K1(zeta) = int_zeta^0 s k'(s) ds = -zeta k(zeta) - K(zeta)
  template <class T>
  static T K1(const T& z)
  {
    return -1.0 * z * k(z) - K(z);
  }

  // int_0^u S for the smooth step S, tabulated once
  static double step_integral(double u);
};

}  // namespace ekman
