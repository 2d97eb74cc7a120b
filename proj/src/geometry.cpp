#include "ekman/geometry.hpp"

#include <limits>

namespace ekman {

ConvexShore ConvexShore::disk(double R)
{
  if (!(R > 0.0)) throw ConfigError("shore radius must be positive");
  ConvexShore s;
  s.kind_ = Kind::disk;
  s.R_ = R;
  s.length_ = 2.0 * M_PI * R;
  const int n = 256;
  for (int k = 0; k < n; ++k) {
    double th = 2.0 * M_PI * k / n;
    s.gamma_.push_back({R * std::cos(th), R * std::sin(th)});
    s.gamma_prime_.push_back({-std::sin(th), std::cos(th)});
    s.kappa_.push_back(1.0 / R);
    s.theta_of_sample_.push_back(th);
  }
  return s;
}

ConvexShore ConvexShore::curve(double R, std::vector<double> a, std::vector<double> b,
                               int n_samples)
{
  if (a.size() != b.size()) throw ConfigError("fourier coefficient lists differ in length");
  double slack = R;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double m = double(i + 2);
    slack -= (m * m - 1.0) * (std::abs(a[i]) + std::abs(b[i]));
  }
  if (!(slack > 0.0)) throw ConfigError("support function does not describe a strictly convex curve");

  ConvexShore s;
  s.kind_ = Kind::curve;
  s.R_ = R;
  s.a_ = std::move(a);
  s.b_ = std::move(b);
  s.length_ = 2.0 * M_PI * R;

  // arclength as a function of the normal angle, closed form
  auto arc = [&](double th) {
    double v = R * th;
    for (std::size_t i = 0; i < s.a_.size(); ++i) {
      double m = double(i + 2);
      v += (1.0 - m * m) / m * (s.a_[i] * std::sin(m * th) - s.b_[i] * std::cos(m * th) + s.b_[i]);
    }
    return v;
  };
  double th = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    double target = s.length_ * k / n_samples;
    for (int it = 0; it < 60; ++it) {
      double step = (arc(th) - target) / s.radius_of_curvature(th);
      th -= step;
      if (std::abs(step) < 1e-15) break;
    }
    double c = std::cos(th), sn = std::sin(th);
    double hv = s.h(th), hp = s.h1(th);
    s.gamma_.push_back({hv * c - hp * sn, hv * sn + hp * c});
    s.gamma_prime_.push_back({-sn, c});
    s.kappa_.push_back(1.0 / s.radius_of_curvature(th));
    s.theta_of_sample_.push_back(th);
  }
  return s;
}

double ConvexShore::project(double x, double y) const
{
  if (kind_ == Kind::disk) return std::atan2(y, x);
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < gamma_.size(); ++k) {
    double dx = x - gamma_[k][0], dy = y - gamma_[k][1];
    double d = dx * dx + dy * dy;
    if (d < bd) { bd = d; best = k; }
  }
  double th = theta_of_sample_[best];
  for (int it = 0; it < 50; ++it) {
    double c = std::cos(th), sn = std::sin(th);
    double g = y * c - x * sn - h1(th);
    double gt = -(x * c + y * sn) - h2(th);
    if (gt >= 0.0) throw DomainError("point inside or on the shore");
    double step = g / gt;
    th -= step;
    if (std::abs(step) < 1e-14) return th;
  }
  throw NonConvergenceError("shore projection did not converge in 50 Newton iterations");
}

ShoreSample ConvexShore::shore_distance(double x, double y) const
{
  ShoreFrame<double> f = frame(x, y);
  if (!(f.rho > 0.0)) throw DomainError("point inside or on the shore");
  return {f.rho, {f.nx, f.ny}, {f.px, f.py}, f.lap};
}

std::array<double, 3> ConvexShore::point_at(double theta, double rho) const
{
  double c = std::cos(theta), s = std::sin(theta);
  double hv = h(theta), hp = h1(theta);
  double x = hv * c - hp * s + rho * c;
  double y = hv * s + hp * c + rho * s;
  return {x, y, radius_of_curvature(theta) + rho};
}

DepthProfile::DepthProfile(Family fam, double rho0, double H, double ell)
    : fam_(fam), rho0_(rho0), H_(H), ell_(ell)
{
  if (!(rho0 > 0.0)) throw ConfigError("rho0 must be strictly positive");
  if (!(H > 0.0)) throw ConfigError("depth H must be positive");
  if (!(ell > 0.0)) throw ConfigError("depth length scale ell must be positive");
}

std::string DepthProfile::family_name() const
{
  switch (fam_) {
    case Family::exponential: return "exponential";
    case Family::tanh: return "tanh";
    case Family::flat_cap: return "flat_cap";
  }
  return "?";
}

double DepthProfile::rho_at_depth(double target) const
{
  if (!(target > 0.0 && target < H_)) throw DomainError("target depth outside (0, H)");
  double lo = rho0_, hi = rho0_ + ell_;
  while (phi(hi) < target) hi = rho0_ + 2.0 * (hi - rho0_);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    double mid = 0.5 * (lo + hi);
    (phi(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Topography::Topography(ConvexShore shore, DepthProfile depth, double beta)
    : shore_(std::move(shore)), depth_(depth), beta_(beta)
{
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
}

double Topography::lambda_phi(double rho) const
{
  double p = depth_.phi(rho);
  if (!(p > 0.0)) throw ShoreSingularityError("lambda_phi requested where the depth vanishes");
  return lambda_of(p, depth_.dphi(rho));
}

DomainProbe Topography::domain_probe(double x, double y, double z) const
{
  double rho;
  try {
    rho = shore_.frame(x, y).rho;
  } catch (const DomainError&) {
    return {false, 0.0};
  }
  if (!(rho > depth_.rho0())) return {false, 0.0};
  double p = depth_.phi(rho);
  bool inside = z < 0.0 && z > -p;
  double d = std::min(-z, p + z);
  return {inside, d > 0.0 ? d : 0.0};
}

}  // namespace ekman
