#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ekman/calculus.hpp"
#include "ekman/profiles.hpp"

using namespace ekman;

namespace {
Topography default_topo()
{
  return Topography(ConvexShore::disk(1.0), DepthProfile(DepthProfile::Family::exponential, 0.5, 2.0, 1.0), 0.125);
}
InitialSwirl gaussian() { return InitialSwirl(InitialSwirl::Family::gaussian, 1.0, 3.5, 0.75); }
}  // namespace

TEST_CASE("derived scales")
{
  AnsatzParams P(default_topo(), 0.05, 0.75, gaussian());
  CHECK(P.E() == doctest::Approx(2 * 0.125 * 0.05 * 0.05));
  CHECK(P.L() == doctest::Approx(std::pow(0.05, 0.25)));
  CHECK(P.depth().phi(P.rho_O()) == doctest::Approx(2 * P.L()).epsilon(1e-12));
}

TEST_CASE("parameter validation")
{
  CHECK_THROWS_AS(AnsatzParams(default_topo(), 1.2, 0.75, gaussian()), ConfigError);
  CHECK_THROWS_AS(AnsatzParams(default_topo(), 0.05, 0.6, gaussian()), ConfigError);
  CHECK_THROWS_AS(AnsatzParams(default_topo(), 0.05, 1.0, gaussian()), ConfigError);
  // eps^(1-a) >= H/2
  Topography shallow(ConvexShore::disk(1.0), DepthProfile(DepthProfile::Family::exponential, 0.5, 0.5, 1.0), 0.125);
  CHECK_THROWS_AS(AnsatzParams(shallow, 0.2, 0.75, gaussian()), ConfigError);
}

TEST_CASE("shore factor switches between 2L and 2.5L")
{
  AnsatzParams P(default_topo(), 0.05, 0.75, gaussian());
  double L = P.L();
  CHECK(P.shore_factor(1.9 * L) == 0.0);
  CHECK(P.shore_factor(2.0 * L) == 0.0);
  CHECK(P.shore_factor(2.5 * L) == 1.0);
  CHECK(P.shore_factor(3.0 * L) == 1.0);
  double mid = P.shore_factor(2.25 * L);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
}

TEST_CASE("interior swirl follows the pumped decay")
{
  AnsatzParams P(default_topo(), 0.05, 0.75, gaussian());
  for (double rho : {1.5, 2.5, 3.5, 4.2}) {
    for (double t : {0.0, 1.0, 7.5}) {
      double phi = 2.0 * (1.0 - std::exp(-(rho - 0.5)));
      double dphi = 2.0 * std::exp(-(rho - 0.5));
      double lam = std::sqrt(0.25) / phi * 0.5 * (1.0 + std::pow(1.0 + dphi * dphi, 0.25));
      double q = (rho - 3.5) / 0.75;
      double u0 = phi * std::exp(-q * q);
      double chi = P.shore_factor(phi);
      CHECK(P.u_theta_eps(t, rho) == doctest::Approx(chi * u0 * std::exp(-lam * t)).epsilon(1e-13));
    }
  }
  CHECK(P.u_theta_eps(1.0, P.rho_O() * 0.999) == 0.0);
}

TEST_CASE("assembled velocity at mid depth is the interior swirl to order eps")
{
  AnsatzParams P(default_topo(), 0.05, 0.75, gaussian());
  double rho = 3.2, t = 0.5;
  double phi = P.depth().phi(rho);
  double r = 1.0 + rho;
  AppValue v = assemble_U_app(P, t, {r, 0.0, -0.5 * phi});
  double ut = P.u_theta_eps(t, rho);
  CHECK(std::abs(v.velocity[1] - ut) <= 5.0 * P.eps() * std::abs(ut));
  CHECK(std::abs(v.velocity[0]) <= 5.0 * P.eps() * std::abs(ut));
}

TEST_CASE("sign flip breaks the surface impermeability")
{
  AnsatzParams P(default_topo(), 0.05, 0.75, gaussian());
  AnsatzParams M(default_topo(), 0.05, 0.75, gaussian(), Mutation::sign_flip);
  AppValue a = assemble_U_app(P, 0.3, {4.0, 0.0, 0.0});
  AppValue b = assemble_U_app(M, 0.3, {4.0, 0.0, 0.0});
  CHECK(std::abs(a.velocity[2]) < 1e-12);
  CHECK(std::abs(b.velocity[2]) > 1e-4);
}

TEST_CASE("shore-constant data is unbounded relative to depth")
{
  InitialSwirl s(InitialSwirl::Family::shore_constant, 1.0, 2.0, 0.5);
  DepthProfile d(DepthProfile::Family::exponential, 0.5, 2.0, 1.0);
  CHECK(s.u0(0.51, d) == 1.0);
  CHECK(s.u0(2.6, d) == 0.0);
  CHECK(s.u0(0.51, d) / d.phi(0.51) > 50.0);
}
