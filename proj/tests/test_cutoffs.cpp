#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "ekman/cutoffs.hpp"
#include "ekman/quadrature.hpp"

using namespace ekman;
using boost::math::quadrature::gauss_kronrod;

namespace {
double integral(auto f, double a, double b)
{
  return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}
}  // namespace

TEST_CASE("smooth step")
{
  CHECK(smooth_step(-0.1) == 0.0);
  CHECK(smooth_step(1.2) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  for (double s : {0.1, 0.3, 0.77}) {
    CHECK(smooth_step(s) + smooth_step(1.0 - s) == doctest::Approx(1.0).epsilon(1e-15));
    double h = 1e-6;
    double fd = (smooth_step(s + h) - smooth_step(s - h)) / (2 * h);
    CHECK(smooth_step_prime(s) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("chi plateau and support")
{
  CHECK(CutoffChi::chi(0.0) == 1.0);
  CHECK(CutoffChi::chi(0.5) == 1.0);
  CHECK(CutoffChi::chi(1.0) == 0.0);
  CHECK(CutoffChi::chi(0.75) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(CutoffChi::chi_prime(0.3) == 0.0);
}

TEST_CASE("k has zero mean and equals 1 above the bump")
{
  double m0 = integral([](double z) { return CutoffK::k(z); }, -2.0, 0.0);
  CHECK(std::abs(m0) < 1e-13);
  CHECK(CutoffK::k(-0.5) == 1.0);
  CHECK(CutoffK::k(-2.5) == 0.0);
  CHECK(CutoffK::K(0.0) == 0.0);
  CHECK(std::abs(CutoffK::K(-2.5)) < 1e-13);
}

TEST_CASE("K and K1 agree with direct quadrature")
{
  for (double z : {-1.9, -1.5, -1.2, -0.4}) {
    double K = integral([](double s) { return CutoffK::k(s); }, z, 0.0);
    CHECK(CutoffK::K(z) == doctest::Approx(K).epsilon(1e-12));
    double K1 = integral([](double s) { return s * CutoffK::k_prime(s); }, z, 0.0);
    CHECK(CutoffK::K1(z) == doctest::Approx(K1).epsilon(1e-11));
    double u = std::min(z + 2.0, 1.0);
    double S = integral([](double s) { return smooth_step(s); }, 0.0, u);
    CHECK(CutoffK::step_integral(u) == doctest::Approx(S).epsilon(1e-12));
  }
}

TEST_CASE("K jets carry the derivative -k")
{
  double z = -1.37, h = 1e-5;
  double fd = (CutoffK::K(z + h) - CutoffK::K(z - h)) / (2 * h);
  CHECK(fd == doctest::Approx(-CutoffK::k(z)).epsilon(1e-8));
  Jet j = CutoffK::K(Jet::variable(z, AZ));
  CHECK(j.v == CutoffK::K(z));
  CHECK(j.d[AZ] == doctest::Approx(-CutoffK::k(z)).epsilon(1e-14));
  CHECK(j.hess(AZ, AZ) == doctest::Approx(-CutoffK::k_prime(z)).epsilon(1e-12));
}
