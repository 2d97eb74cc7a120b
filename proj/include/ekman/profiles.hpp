#pragma once
#include <array>
#include <cmath>
#include <string>

#include "ekman/cutoffs.hpp"
#include "ekman/errors.hpp"
#include "ekman/geometry.hpp"
#include "ekman/jet.hpp"

namespace ekman {

template <class T>
struct FrameVector {
  T r{}, th{}, z{};  // along grad rho, grad_perp rho, e_z
};

template <class T>
FrameVector<T> operator+(const FrameVector<T>& a, const FrameVector<T>& b)
{
  return {a.r + b.r, a.th + b.th, a.z + b.z};
}
template <class T>
FrameVector<T> operator*(double c, const FrameVector<T>& a)
{
  return {c * a.r, c * a.th, c * a.z};
}

class InitialSwirl {
 public:
  // gaussian: A phi(rho) exp(-(rho - c)^2 / w^2), u0/phi bounded.
  // shore_constant: A up to rho = c, smoothly off by c + w; u0/phi unbounded
  // at the shore (negative control only).
  enum class Family { gaussian, shore_constant };

  InitialSwirl() = default;
  InitialSwirl(Family fam, double amplitude, double center, double width);

  Family family() const { return fam_; }
  std::string family_name() const;
  double amplitude() const { return A_; }
  double center() const { return c_; }
  double width() const { return w_; }

  template <class T>
  T u0(const T& rho, const DepthProfile& depth) const
  {
    using std::exp;
    if (fam_ == Family::gaussian) {
      T q = (rho - c_) / w_;
      return A_ * depth.phi(rho) * exp(-1.0 * q * q);
    }
    return A_ * (1.0 - smooth_step((rho - c_) / w_));
  }

  // radius beyond which u0 is below roundoff
  double support_end() const;

 private:
  Family fam_ = Family::gaussian;
  double A_ = 1.0, c_ = 3.5, w_ = 0.75;
};

enum class Mutation { none, sign_flip, cutoff_variable };

// Rossby number, shore exponent and everything derived from them.
class AnsatzParams {
 public:
  // u_eps = (1 - chi(phi/eps^{1-a} - shore_shift)) u: vanishes for
  // phi <= 2 eps^{1-a}, equals u for phi >= 2.5 eps^{1-a}
  static constexpr double shore_shift = 1.5;

  AnsatzParams(Topography topo, double eps, double a, InitialSwirl data,
               Mutation mutation = Mutation::none);

  const Topography& topo() const { return topo_; }
  const DepthProfile& depth() const { return topo_.depth(); }
  const InitialSwirl& data() const { return data_; }
  double eps() const { return eps_; }
  double a() const { return a_; }
  double E() const { return E_; }
  double sqrtE() const { return sE_; }
  double L() const { return L_; }  // eps^{1-a}
  Mutation mutation() const { return mutation_; }
  double beta() const { return topo_.beta(); }

  // rho where phi = 2 eps^{1-a}: inner edge of O_eps
  double rho_O() const { return rho_O_; }
  double rho_max() const { return rho_max_; }

  template <class T>
  T shore_factor(const T& phi) const
  {
    return 1.0 - CutoffChi::chi(phi / L_ - shore_shift);
  }

  double u_theta_eps(double t, double rho) const;

 private:
  Topography topo_;
  double eps_, a_;
  InitialSwirl data_;
  Mutation mutation_;
  double E_, sE_, L_, rho_O_, rho_max_;
};

// Column quantities: functions of (t, rho) only.
template <class T>
struct Column {
  T phi, dphi, delta, ddelta, lam;
  T u;      // u_eps
  T ubar;   // limit profile
  T Du;     // div_h(u grad rho)
  T Dlu;    // div_h(lambda u grad rho)
  T Du13;   // div_h(u delta^{1/3} grad rho)
  bool active;  // u_eps not identically zero near this rho
};

template <class T>
Column<T> column(const AnsatzParams& P, const T& t, const T& rho, const T& lap)
{
  using std::exp;
  using std::pow;
  const DepthProfile& dp = P.depth();
  const Topography& topo = P.topo();
  Column<T> c;
  Dual<T> r(rho, T(1.0));
  Dual<T> ph = dp.phi(r), dph = dp.dphi(r);
  c.phi = ph.v;
  c.dphi = dph.v;
  Dual<T> del = Topography::delta_of_slope(dph);
  c.delta = del.v;
  c.ddelta = del.e;
  Dual<T> u0 = P.data().u0(r, dp);
  if (value_of(ph.v) <= 0.0) {
    c.lam = T(0.0);
    c.ubar = value_of(t) > 0.0 ? T(0.0) : u0.v;
    c.u = c.Du = c.Dlu = c.Du13 = T(0.0);
    c.active = false;
    return c;
  }
  Dual<T> lam = topo.lambda_of(ph, dph);
  c.lam = lam.v;
  c.ubar = exp(-1.0 * t * lam.v) * u0.v;
  c.active = value_of(ph.v) > 2.0 * P.L();
  if (!c.active) {
    c.u = c.Du = c.Dlu = c.Du13 = T(0.0);
    return c;
  }
  Dual<T> tt(t);
  Dual<T> ue = P.shore_factor(ph) * exp(-1.0 * tt * lam) * u0;
  c.u = ue.v;
  c.Du = ue.e + ue.v * lap;
  Dual<T> lu = lam * ue;
  c.Dlu = lu.e + lu.v * lap;
  Dual<T> u13 = ue * pow(del, 1.0 / 3.0);
  c.Du13 = u13.e + u13.v * lap;
  return c;
}

template <class T>
struct AnsatzTerms {
  ShoreFrame<T> frame;
  Column<T> col;
  FrameVector<T> U0_int, U0_surf, U0_bot;
  FrameVector<T> Ua_surf, Ua_bot;
  FrameVector<T> U1_int, U1_surf, U1_bot;
  FrameVector<T> U2_surf, U2_bot;
  FrameVector<T> limit;
  T P1_bot;
};

// Every term of the approximate solution at (t, x, y, z).
template <class T>
AnsatzTerms<T> evaluate_terms(const AnsatzParams& P, const T& t, const T& x, const T& y,
                              const T& z)
{
  using std::cos;
  using std::exp;
  using std::pow;
  using std::sin;
  AnsatzTerms<T> A;
  A.frame = P.topo().shore().frame(x, y);
  if (value_of(A.frame.rho) < P.depth().rho0())
    throw DomainError("point on land (rho < rho0)");
  A.col = column(P, t, A.frame.rho, A.frame.lap);
  const Column<T>& c = A.col;
  double ph = value_of(c.phi), zv = value_of(z);
  double tol = 1e-12 * (1.0 + ph);
  if (zv > tol || zv < -ph - tol) throw DomainError("point outside the water column");

  const T zero(0.0);
  A.limit = {zero, c.ubar, zero};
  A.U0_int = {zero, c.u, zero};
  A.U1_int = {c.lam * c.u, zero, -0.5 * P.topo().sqrt2beta() * c.Du - z * c.Dlu};
  A.P1_bot = zero;
  A.U0_surf = A.U0_bot = A.Ua_surf = A.Ua_bot = {zero, zero, zero};
  A.U1_surf = A.U1_bot = A.U2_surf = A.U2_bot = {zero, zero, zero};
  if (!c.active) return A;

  const double s = P.sqrtE(), L = P.L(), sb = P.topo().sqrt2beta();
  // surface layer, zeta1 = z/sqrt(E), zeta2 = -z/L
  {
    T zeta = z / s;
    double zeta_v = value_of(zeta);
    if (zeta_v > -60.0) {
      T e = exp(zeta), sn = sin(zeta), cs = cos(zeta);
      T chi2 = CutoffChi::chi(-1.0 * z / L);
      T dchi2 = CutoffChi::chi_prime(-1.0 * z / L);
      T uc = c.u * chi2 * e;
      A.U0_surf = {uc * sn, -1.0 * uc * cs, zero};
      A.Ua_surf = {0.5 * sb * c.u * dchi2 * e * (cs - sn), zero, zero};
      T kz = CutoffK::k(zeta);
      T w1;
      if (P.mutation() == Mutation::cutoff_variable)
        w1 = 0.5 * sb * c.Du * CutoffChi::chi((z + c.phi) / L) * e * (cs - sn);
      else
        w1 = 0.5 * sb * c.Du * chi2 * e * (cs - sn);
      if (P.mutation() == Mutation::sign_flip) w1 = -1.0 * w1;
      A.U1_surf = {-1.0 * c.lam * c.u * kz, zero, w1};
      A.U2_surf = {zero, zero, -sb * c.Dlu * CutoffK::K(zeta)};
    }
  }
  // bottom layer, eta = z + phi, zeta1 = -eta/(delta sqrt(E)), zeta2 = eta/L
  {
    T eta = z + c.phi;
    T zeta = -1.0 * eta / (c.delta * s);
    double zeta_v = value_of(zeta);
    if (zeta_v > -60.0) {
      T e = exp(zeta), sn = sin(zeta), cs = cos(zeta);
      T chi2 = CutoffChi::chi(eta / L);
      T dchi2 = CutoffChi::chi_prime(eta / L);
      T dm23 = pow(c.delta, -2.0 / 3.0);
      T uc = c.u * chi2 * e;
      A.U0_bot = {uc * dm23 * sn, -1.0 * uc * cs, -1.0 * c.dphi * uc * dm23 * sn};
      T ua = 0.5 * sb * pow(c.delta, 1.0 / 3.0) * c.u * dchi2 * e * (cs - sn);
      A.Ua_bot = {ua, zero, -1.0 * c.dphi * ua};
      T kz = CutoffK::k(zeta);
      T b1r = -1.0 * c.lam * c.u * kz;
      T w1 = -0.5 * sb * c.Du13 * chi2 * e * (cs - sn) -
             sb * c.ddelta * dm23 * c.u * chi2 * zeta * e * sn;
      A.U1_bot = {b1r, zero, w1 - c.dphi * b1r};
      A.U2_bot = {zero, zero,
                  sb * c.delta * c.Dlu * CutoffK::K(zeta) -
                      sb * c.ddelta * c.lam * c.u * CutoffK::K1(zeta)};
      A.P1_bot = 0.5 * sb * (1.0 + c.dphi * c.dphi) * pow(c.delta, -5.0 / 3.0) * c.dphi * c.u *
                 e * (sn + cs);
    }
  }
  return A;
}

template <class T>
std::array<T, 3> to_cartesian(const ShoreFrame<T>& f, const FrameVector<T>& v)
{
  return {v.r * f.nx + v.th * f.px, v.r * f.ny + v.th * f.py, v.z};
}

// Which terms enter an assembled field, and with which order weights.
struct TermMask {
  bool U0_int = true, U0_surf = true, U0_bot = true;
  bool Ua_surf = true, Ua_bot = true;
  bool U1_int = true, U1_surf = true, U1_bot = true;
  bool U2_surf = true, U2_bot = true;

  static TermMask full() { return {}; }
  static TermMask interior_only()
  {
    TermMask m;
    m.U0_surf = m.U0_bot = m.Ua_surf = m.Ua_bot = false;
    m.U1_int = m.U1_surf = m.U1_bot = m.U2_surf = m.U2_bot = false;
    return m;
  }
  static TermMask interior() // U0_int + eps U1_int
  {
    TermMask m = interior_only();
    m.U1_int = true;
    return m;
  }
  static TermMask layers()
  {
    TermMask m;
    m.U0_int = m.U1_int = false;
    return m;
  }
  static TermMask surface_order0()
  {
    TermMask m = interior_only();
    m.U0_int = false;
    m.U0_surf = true;
    return m;
  }
};

template <class T>
FrameVector<T> assemble_frame(const AnsatzParams& P, const AnsatzTerms<T>& A, const TermMask& m)
{
  FrameVector<T> s{T(0.0), T(0.0), T(0.0)};
  double ea = std::pow(P.eps(), P.a()), e1 = P.eps(), e2 = e1 * e1;
  if (m.U0_int) s = s + A.U0_int;
  if (m.U0_surf) s = s + A.U0_surf;
  if (m.U0_bot) s = s + A.U0_bot;
  if (m.Ua_surf) s = s + ea * A.Ua_surf;
  if (m.Ua_bot) s = s + ea * A.Ua_bot;
  if (m.U1_int) s = s + e1 * A.U1_int;
  if (m.U1_surf) s = s + e1 * A.U1_surf;
  if (m.U1_bot) s = s + e1 * A.U1_bot;
  if (m.U2_surf) s = s + e2 * A.U2_surf;
  if (m.U2_bot) s = s + e2 * A.U2_bot;
  return s;
}

struct AppValue {
  std::array<double, 3> velocity;
  double pressure;
};

// Assembled velocity (Cartesian) and pressure at (t, x).
AppValue assemble_U_app(const AnsatzParams& P, double t, const std::array<double, 3>& x);

// P0_int(t, rho) = int_{rho0}^{rho} u_eps(t, s) ds
double P0_int(const AnsatzParams& P, double t, double rho);

}  // namespace ekman
