#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ekman/quadrature.hpp"

using namespace ekman;

TEST_CASE("gauss-legendre exactness up to degree 2n-1")
{
  for (int n : {1, 2, 5, 16, 40}) {
    const GaussRule& g = gauss_legendre(n);
    REQUIRE(int(g.x.size()) == n);
    for (int p = 0; p <= 2 * n - 1 && p <= 30; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g.w[i] * std::pow(g.x[i], p);
      double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("rule cache returns stable references")
{
  CHECK(&gauss_legendre(8) == &gauss_legendre(8));
}

TEST_CASE("composite rule integrates smooth functions")
{
  Nodes1D r = composite_gauss({0.0, 0.5, 1.0, 3.0}, 10);
  CHECK(r.x.size() == 30);
  CHECK(r.sum() == doctest::Approx(3.0).epsilon(1e-14));
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::exp(-r.x[i]);
  CHECK(s == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-14));
}
