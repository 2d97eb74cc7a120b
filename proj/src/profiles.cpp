#include "ekman/profiles.hpp"

#include <algorithm>

#include "ekman/quadrature.hpp"

namespace ekman {

InitialSwirl::InitialSwirl(Family fam, double amplitude, double center, double width)
    : fam_(fam), A_(amplitude), c_(center), w_(width)
{
  if (!(width > 0.0)) throw ConfigError("data.width must be positive");
}

std::string InitialSwirl::family_name() const
{
  return fam_ == Family::gaussian ? "gaussian" : "shore_constant";
}

double InitialSwirl::support_end() const
{
  return fam_ == Family::gaussian ? c_ + 6.5 * w_ : c_ + w_;
}

AnsatzParams::AnsatzParams(Topography topo, double eps, double a, InitialSwirl data,
                           Mutation mutation)
    : topo_(std::move(topo)), eps_(eps), a_(a), data_(data), mutation_(mutation)
{
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  if (!(a > 2.0 / 3.0 && a < 1.0)) throw ConfigError("ansatz.a must lie in (2/3, 1)");
  E_ = 2.0 * topo_.beta() * eps * eps;
  sE_ = std::sqrt(E_);
  L_ = std::pow(eps, 1.0 - a);
  const DepthProfile& dp = topo_.depth();
  if (!(L_ < 0.5 * dp.H()))
    throw ConfigError("eps^(1-a) >= H/2: the region O_eps is empty; use smaller eps or larger H");
  rho_O_ = dp.rho_at_depth(2.0 * L_);
  rho_max_ = std::max(data_.support_end(), rho_O_ + dp.ell());
  if (data_.center() <= dp.rho0()) throw ConfigError("data.center must lie offshore (> rho0)");

  // layers of one boundary must not reach the other boundary inside O_eps
  double dmax = 1.0;
  for (int i = 0; i <= 2000; ++i) {
    double r = rho_O_ + (rho_max_ - rho_O_) * i / 2000.0;
    dmax = std::max(dmax, topo_.delta(r));
  }
  if (2.0 * dmax * sE_ > L_)
    throw ConfigError("boundary layers too thick for the shore cut-off scale (2 delta sqrt(E) > eps^(1-a))");
}

double AnsatzParams::u_theta_eps(double t, double rho) const
{
  return column<double>(*this, t, rho, 0.0).u;
}

double P0_int(const AnsatzParams& P, double t, double rho)
{
  double lo = P.rho_O();
  if (rho <= lo) return 0.0;
  double panel = 0.25 * P.data().width();
  int n = std::max(1, int(std::ceil((rho - lo) / panel)));
  const auto& g = gauss_legendre(16);
  double h = (rho - lo) / n, acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double a = lo + i * h;
    for (std::size_t q = 0; q < g.x.size(); ++q)
      acc += 0.5 * h * g.w[q] * P.u_theta_eps(t, a + 0.5 * h * (g.x[q] + 1.0));
  }
  return acc;
}

AppValue assemble_U_app(const AnsatzParams& P, double t, const std::array<double, 3>& x)
{
  AnsatzTerms<double> A = evaluate_terms<double>(P, t, x[0], x[1], x[2]);
  FrameVector<double> v = assemble_frame(P, A, TermMask::full());
  AppValue out;
  out.velocity = to_cartesian(A.frame, v);
  out.pressure = P0_int(P, t, A.frame.rho) + P.eps() * A.P1_bot;
  return out;
}

}  // namespace ekman
