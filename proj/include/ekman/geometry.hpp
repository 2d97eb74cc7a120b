#pragma once
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ekman/errors.hpp"
#include "ekman/jet.hpp"
#include "ekman/smooth.hpp"

namespace ekman {

// Local orthonormal frame attached to the shore distance rho.
// n = grad rho, p = grad_perp rho = rotate90(n).
template <class T>
struct ShoreFrame {
  T rho, nx, ny, px, py, lap;
};

struct ShoreSample {
  double rho;
  std::array<double, 2> grad;
  std::array<double, 2> grad_perp;
  double lap;
};

// Convex shore. The smooth-curve kind is described by its support function
// h(theta) = R + sum_m (a_m cos m theta + b_m sin m theta), m >= 2, with theta
// the outward normal angle; radius of curvature is r = h + h''.
class ConvexShore {
 public:
  enum class Kind { disk, curve };

  static ConvexShore disk(double R);
  static ConvexShore curve(double R, std::vector<double> a, std::vector<double> b,
                           int n_samples = 1024);

  Kind kind() const { return kind_; }
  double R() const { return R_; }
  double length() const { return length_; }

  // arclength samples
  const std::vector<std::array<double, 2>>& gamma() const { return gamma_; }
  const std::vector<std::array<double, 2>>& gamma_prime() const { return gamma_prime_; }
  const std::vector<double>& kappa() const { return kappa_; }

  ShoreSample shore_distance(double x, double y) const;

  // normal angle of the projection of (x, y) onto the shore
  double project(double x, double y) const;

  template <class T>
  ShoreFrame<T> frame(const T& x, const T& y) const;

  // (x_h, jacobian) at normal angle theta and distance rho
  std::array<double, 3> point_at(double theta, double rho) const;
  double radius_of_curvature(double theta) const { return h2(theta) + h(theta); }

  template <class T> T h(const T& th) const;
  template <class T> T h1(const T& th) const;
  template <class T> T h2(const T& th) const;

 private:
  Kind kind_ = Kind::disk;
  double R_ = 1.0;
  std::vector<double> a_, b_;
  double length_ = 0.0;
  std::vector<std::array<double, 2>> gamma_, gamma_prime_;
  std::vector<double> kappa_, theta_of_sample_;
};

template <class T>
T ConvexShore::h(const T& th) const
{
  using std::cos;
  using std::sin;
  T s(R_);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    double m = double(i + 2);
    s = s + a_[i] * cos(m * th) + b_[i] * sin(m * th);
  }
  return s;
}

template <class T>
T ConvexShore::h1(const T& th) const
{
  using std::cos;
  using std::sin;
  T s(0.0);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    double m = double(i + 2);
    s = s + m * (b_[i] * cos(m * th) - a_[i] * sin(m * th));
  }
  return s;
}

template <class T>
T ConvexShore::h2(const T& th) const
{
  using std::cos;
  using std::sin;
  T s(0.0);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    double m = double(i + 2);
    s = s - m * m * (a_[i] * cos(m * th) + b_[i] * sin(m * th));
  }
  return s;
}

template <class T>
ShoreFrame<T> ConvexShore::frame(const T& x, const T& y) const
{
  using std::cos;
  using std::sin;
  using std::sqrt;
  ShoreFrame<T> f;
  if (kind_ == Kind::disk) {
    T r = sqrt(x * x + y * y);
    if (value_of(r) <= R_) throw DomainError("point inside or on the shore");
    T ir = 1.0 / r;
    f.rho = r - R_;
    f.nx = x * ir;
    f.ny = y * ir;
    f.lap = ir;
  } else {
    T th(project(value_of(x), value_of(y)));
    // Newton in the number type itself: each sweep fixes one more order
    for (int it = 0; it < 3; ++it) {
      T c = cos(th), s = sin(th);
      T g = y * c - x * s - h1(th);
      T gt = -1.0 * (x * c + y * s) - h2(th);
      th = th - g / gt;
    }
    T c = cos(th), s = sin(th);
    f.nx = c;
    f.ny = s;
    f.rho = x * c + y * s - h(th);
    if (value_of(f.rho) <= 0.0) throw DomainError("point inside or on the shore");
    f.lap = 1.0 / (f.rho + h(th) + h2(th));
  }
  f.px = -1.0 * f.ny;
  f.py = f.nx;
  return f;
}

class DepthProfile {
 public:
  enum class Family { exponential, tanh, flat_cap };

  DepthProfile() = default;
  DepthProfile(Family fam, double rho0, double H, double ell);

  Family family() const { return fam_; }
  std::string family_name() const;
  double rho0() const { return rho0_; }
  double H() const { return H_; }
  double ell() const { return ell_; }
  // the flat cap has a plateau with phi' = 0 of positive measure
  bool has_flat_plateau() const { return fam_ == Family::flat_cap; }

  template <class T> T phi(const T& rho) const;
  template <class T> T dphi(const T& rho) const;
  double d2phi(double rho) const { return dphi(Dual<double>(rho, 1.0)).e; }

  // smallest rho with phi(rho) = target, target in (0, H)
  double rho_at_depth(double target) const;

 private:
  void check(double rho) const
  {
    if (rho < rho0_) throw DomainError("depth profile evaluated on land (rho < rho0)");
  }
  Family fam_ = Family::exponential;
  double rho0_ = 0.5, H_ = 1.0, ell_ = 1.0;
};

template <class T>
T DepthProfile::phi(const T& rho) const
{
  using std::exp;
  using std::tanh;
  check(value_of(rho));
  T x = (rho - rho0_) / ell_;
  switch (fam_) {
    case Family::exponential: return H_ * (1.0 - exp(-1.0 * x));
    case Family::tanh: return H_ * tanh(x);
    case Family::flat_cap: return H_ * smooth_step(x);
  }
  return T(0.0);
}

template <class T>
T DepthProfile::dphi(const T& rho) const
{
  using std::exp;
  using std::tanh;
  check(value_of(rho));
  T x = (rho - rho0_) / ell_;
  switch (fam_) {
    case Family::exponential: return (H_ / ell_) * exp(-1.0 * x);
    case Family::tanh: {
      T th = tanh(x);
      return (H_ / ell_) * (1.0 - th * th);
    }
    case Family::flat_cap: return (H_ / ell_) * smooth_step_prime(x);
  }
  return T(0.0);
}

struct DomainProbe {
  bool inside;
  double d_phi;
};

class Topography {
 public:
  Topography(ConvexShore shore, DepthProfile depth, double beta);

  const ConvexShore& shore() const { return shore_; }
  const DepthProfile& depth() const { return depth_; }
  double beta() const { return beta_; }
  double sqrt2beta() const { return std::sqrt(2.0 * beta_); }
  // flat-bottom pumping rate sqrt(2 beta)/H
  double lambda_flat() const { return sqrt2beta() / depth_.H(); }

  template <class T>
  static T delta_of_slope(const T& dphi)
  {
    using std::pow;
    return pow(1.0 + dphi * dphi, 0.75);
  }
  template <class T>
  T lambda_of(const T& phi, const T& dphi) const
  {
    using std::pow;
    return (sqrt2beta() / phi) * (0.5 * (1.0 + pow(1.0 + dphi * dphi, 0.25)));
  }

  double delta(double rho) const { return delta_of_slope(depth_.dphi(rho)); }
  double lambda_phi(double rho) const;
  DomainProbe domain_probe(double x, double y, double z) const;

 private:
  ConvexShore shore_;
  DepthProfile depth_;
  double beta_;
};

}  // namespace ekman
