#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "ekman/calculus.hpp"

using namespace ekman;

TEST_CASE("jet first and second partials")
{
  double x0 = 0.7, y0 = -0.4, z0 = 0.3;
  Jet x = Jet::variable(x0, AX), y = Jet::variable(y0, AY), z = Jet::variable(z0, AZ);
  Jet f = x * x * y + sin(z) * exp(x);
  CHECK(f.v == doctest::Approx(x0 * x0 * y0 + std::sin(z0) * std::exp(x0)).epsilon(1e-15));
  CHECK(f.d[AX] == doctest::Approx(2 * x0 * y0 + std::sin(z0) * std::exp(x0)).epsilon(1e-15));
  CHECK(f.d[AY] == doctest::Approx(x0 * x0).epsilon(1e-15));
  CHECK(f.d[AZ] == doctest::Approx(std::cos(z0) * std::exp(x0)).epsilon(1e-15));
  CHECK(f.hess(AX, AX) == doctest::Approx(2 * y0 + std::sin(z0) * std::exp(x0)).epsilon(1e-15));
  CHECK(f.hess(AX, AY) == doctest::Approx(2 * x0).epsilon(1e-15));
  CHECK(f.hess(AZ, AX) == doctest::Approx(std::cos(z0) * std::exp(x0)).epsilon(1e-15));
  CHECK(f.hess(AZ, AZ) == doctest::Approx(-std::sin(z0) * std::exp(x0)).epsilon(1e-15));
  Jet g = sqrt(x * x + y * y);
  double r = std::hypot(x0, y0);
  CHECK(g.lap() == doctest::Approx(1.0 / r).epsilon(1e-14));
}

TEST_CASE("vector calculus on fields with known derivatives")
{
  Jet x = Jet::variable(0.3, AX), y = Jet::variable(1.1, AY), z = Jet::variable(-0.2, AZ);
  FrameJet rot{{-1.0 * y, x, Jet(0.0)}};
  CHECK(divergence(rot) == 0.0);
  FrameJet id{{x, y, z}};
  CHECK(divergence(id) == doctest::Approx(3.0));
  FrameJet q{{x * x + y * y, x * y, z * z * z}};
  Vec3 L = laplacian(q);
  CHECK(L[0] == doctest::Approx(4.0));
  CHECK(L[1] == doctest::Approx(0.0));
  CHECK(L[2] == doctest::Approx(6.0 * -0.2));
  Vec3 a = advect(id);
  CHECK(a[0] == doctest::Approx(0.3));
  CHECK(a[2] == doctest::Approx(-0.2));
  Vec3 c = coriolis({1.0, 0.0, 0.0});
  CHECK(c[0] == 0.0);
  CHECK(c[1] == 1.0);
}

TEST_CASE("quadrature volume matches an independent integral")
{
  Topography topo(ConvexShore::disk(1.0), DepthProfile(DepthProfile::Family::exponential, 0.5, 2.0, 1.0), 0.125);
  QuadSettings s;
  Quadrature q = build_quadrature(topo, 1.0, 6.0, 0.01, 0.3, {2.0, 3.0, 4.0, 5.0}, s);
  double vol = integrate(q, [](double, double, double, double) { return 1.0; });
  auto f = [&](double r) { return 2.0 * M_PI * (1.0 + r) * topo.depth().phi(r); };
  double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 1.0, 6.0, 10, 1e-14);
  CHECK(vol == doctest::Approx(oracle).epsilon(1e-12));
  double n2 = norm_L2(q, [](double, double, double, double) { return Vec3{1.0, 0.0, 0.0}; });
  CHECK(n2 == doctest::Approx(std::sqrt(oracle)).epsilon(1e-12));
}

TEST_CASE("column reductions do not depend on the thread count")
{
  Topography topo(ConvexShore::disk(1.0), DepthProfile(DepthProfile::Family::tanh, 0.5, 3.0, 1.0), 0.125);
  Quadrature q = build_quadrature(topo, 0.8, 5.0, 0.02, 0.4, {}, QuadSettings{});
  auto f = [](double x, double y, double z, double) { return std::sin(x) * std::cos(3 * y) + z * z; };
  set_threads(1);
  double a = integrate(q, f);
  set_threads(3);
  double b = integrate(q, f);
  set_threads(1);
  CHECK(a == b);
}

TEST_CASE("time grid and time integral")
{
  auto t = geometric_time_grid(32.0, 24);
  REQUIRE(t.size() == 24);
  CHECK(t.front() == 0.0);
  CHECK(t[1] == doctest::Approx(32e-3));
  CHECK(t.back() == doctest::Approx(32.0).epsilon(1e-15));
  for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] > t[k - 1]);
  // trapezoid is exact for piecewise linear data
  TimeIntegral I = time_L1({0.0, 1.0, 3.0}, {2.0, 1.0, 0.5}, 0.25);
  CHECK(I.value == doctest::Approx(1.5 + 1.5));
  CHECK(I.tail == doctest::Approx(2.0));
}
