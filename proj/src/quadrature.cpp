#include "ekman/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace ekman {

namespace {

GaussRule build(int n)
{
  GaussRule g;
  g.x.assign(n, 0.0);
  g.w.assign(n, 0.0);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
    }
    double w = 2.0 / ((1.0 - z * z) * pp * pp);
    g.x[i] = -z;
    g.x[n - 1 - i] = z;
    g.w[i] = w;
    g.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) g.x[n / 2] = 0.0;
  return g;
}

}  // namespace

const GaussRule& gauss_legendre(int n)
{
  static std::vector<GaussRule> rules;
  static std::once_flag once;
  std::call_once(once, [] {
    rules.resize(129);
    for (int k = 1; k <= 128; ++k) rules[k] = build(k);
  });
  if (n < 1 || n > 128) throw std::out_of_range("gauss_legendre: n must lie in [1, 128]");
  return rules[n];
}

void Nodes1D::append_panel(double a, double b, int n)
{
  if (!(b > a)) return;
  const auto& g = gauss_legendre(n);
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    x.push_back(c + h * g.x[i]);
    w.push_back(h * g.w[i]);
  }
}

double Nodes1D::sum() const
{
  double s = 0.0;
  for (double v : w) s += v;
  return s;
}

Nodes1D composite_gauss(const std::vector<double>& breaks, int n)
{
  Nodes1D out;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) out.append_panel(breaks[i], breaks[i + 1], n);
  return out;
}

}  // namespace ekman
