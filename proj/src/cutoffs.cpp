#include "ekman/cutoffs.hpp"

#include <algorithm>
#include <cmath>

#include "ekman/quadrature.hpp"

namespace ekman {

namespace {

struct StepTable {
  static constexpr int n = 4096;
  std::vector<double> I;
  StepTable() : I(n + 1, 0.0)
  {
    const auto& g = gauss_legendre(12);
    double hstep = 1.0 / n;
    for (int i = 0; i < n; ++i) {
      double a = i * hstep, acc = 0.0;
      for (std::size_t q = 0; q < g.x.size(); ++q)
        acc += g.w[q] * smooth_step(a + 0.5 * hstep * (g.x[q] + 1.0));
      I[i + 1] = I[i] + 0.5 * hstep * acc;
    }
  }
};

const StepTable& table()
{
  static const StepTable t;
  return t;
}

}  // namespace

double CutoffK::step_integral(double u)
{
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 0.5;
  const auto& t = table();
  double hstep = 1.0 / StepTable::n;
  int i = std::min(int(u / hstep), StepTable::n - 1);
  double a = i * hstep;
  double s = (u - a) / hstep;
  double y0 = t.I[i], y1 = t.I[i + 1];
  double m0 = smooth_step(a) * hstep, m1 = smooth_step(a + hstep) * hstep;
  double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 +
         (s3 - s2) * m1;
}

double CutoffK::K_value(double z)
{
  if (z >= plateau_end) return -z;
  if (z <= foot) return 0.0;
  double plate = 1.0 + (0.5 - step_integral(z - foot));
  double b;
  if (z >= bump_mid)
    b = 0.5 * step_integral(2.0 * (plateau_end - z));
  else
    b = 0.25 + 0.5 * (0.5 - step_integral(2.0 * (z - foot)));
  return plate + c_bump * b;
}

}  // namespace ekman
