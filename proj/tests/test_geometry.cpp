#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ekman/geometry.hpp"

using namespace ekman;

TEST_CASE("disk shore distance is radial distance minus radius")
{
  ConvexShore s = ConvexShore::disk(1.5);
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> U(-6.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    double x = U(g), y = U(g);
    double r = std::hypot(x, y);
    if (r < 1.6) continue;
    ShoreSample q = s.shore_distance(x, y);
    CHECK(q.rho == doctest::Approx(r - 1.5).epsilon(1e-13));
    CHECK(q.grad[0] == doctest::Approx(x / r).epsilon(1e-13));
    CHECK(q.grad[1] == doctest::Approx(y / r).epsilon(1e-13));
    CHECK(q.lap == doctest::Approx(1.0 / r).epsilon(1e-12));
  }
}

TEST_CASE("curve shore distance matches brute-force nearest boundary point")
{
  ConvexShore s = ConvexShore::curve(1.0, {0.05, 0.0, 0.02}, {0.0, 0.03, 0.0});
  // boundary point for normal angle th: h n + h' n_perp
  auto boundary = [&](double th) {
    double h = s.h(th), h1 = s.h1(th);
    return std::array<double, 2>{h * std::cos(th) - h1 * std::sin(th), h * std::sin(th) + h1 * std::cos(th)};
  };
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> A(0.0, 2.0 * M_PI), D(0.3, 4.0);
  for (int i = 0; i < 40; ++i) {
    double th = A(g), d = D(g);
    auto b = boundary(th);
    double x = b[0] + d * std::cos(th), y = b[1] + d * std::sin(th);
    double best = 1e300;
    const int n = 200000;
    for (int k = 0; k < n; ++k) {
      auto p = boundary(2.0 * M_PI * k / n);
      best = std::min(best, std::hypot(x - p[0], y - p[1]));
    }
    CHECK(s.shore_distance(x, y).rho == doctest::Approx(best).epsilon(1e-7));
    CHECK(s.shore_distance(x, y).rho == doctest::Approx(d).epsilon(1e-10));
  }
}

TEST_CASE("depth profiles")
{
  DepthProfile e(DepthProfile::Family::exponential, 0.5, 2.0, 1.0);
  CHECK(e.phi(0.5) == 0.0);
  CHECK(e.phi(1.5) == doctest::Approx(2.0 * (1.0 - std::exp(-1.0))).epsilon(1e-15));
  CHECK(e.dphi(1.5) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(e.phi(0.4), DomainError);
  DepthProfile t(DepthProfile::Family::tanh, 0.5, 4.0, 1.0);
  CHECK(t.rho_at_depth(2.0) == doctest::Approx(0.5 + std::atanh(0.5)).epsilon(1e-12));
  DepthProfile f(DepthProfile::Family::flat_cap, 0.5, 2.0, 1.0);
  CHECK(f.has_flat_plateau());
  CHECK(f.phi(1.5) == 2.0);
  CHECK(f.dphi(3.0) == 0.0);
  // finite-difference oracle for the derivative
  for (double r : {0.7, 1.0, 1.3}) {
    double h = 1e-5;
    double fd = (f.phi(r + h) - f.phi(r - h)) / (2.0 * h);
    CHECK(f.dphi(r) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("pumping coefficients")
{
  Topography topo(ConvexShore::disk(1.0), DepthProfile(DepthProfile::Family::exponential, 0.5, 2.0, 1.0), 0.125);
  CHECK(topo.lambda_flat() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(topo.lambda_of(2.0, 0.0) == topo.lambda_flat());
  CHECK(Topography::delta_of_slope(0.0) == 1.0);
  CHECK(Topography::delta_of_slope(1.0) == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-15));
  Topography half(ConvexShore::disk(1.0), DepthProfile(), 0.5);
  CHECK(half.lambda_of(1.0, std::sqrt(3.0)) == doctest::Approx((1.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-14));
  CHECK(topo.lambda_phi(2.0) == doctest::Approx(topo.lambda_of(topo.depth().phi(2.0), topo.depth().dphi(2.0))));
}
