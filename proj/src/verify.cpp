#include "ekman/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "ekman/quadrature.hpp"

namespace ekman {

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y)
{
  const std::size_t n = x.size();
  SlopeFit f;
  if (n < 2) return f;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = std::log(x[i]) - mx, dy = std::log(y[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n > 2) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = std::log(y[i]) - f.intercept - f.slope * std::log(x[i]);
      ss += r * r;
    }
    f.stderr_ = std::sqrt(ss / double(n - 2) / sxx);
  }
  return f;
}

void StudyTable::refit()
{
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(r.eps);
    y.push_back(r.value);
  }
  fit = fit_loglog(x, y);
}

static std::string fmt17(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string StudyTable::to_csv() const
{
  std::string s = "epsilon,value,stderr\n";
  for (const auto& r : rows) s += fmt17(r.eps) + "," + fmt17(r.value) + "," + fmt17(r.stderr_) + "\n";
  return s;
}

StudyTable StudyTable::from_csv(const std::string& text)
{
  StudyTable t;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (line != "epsilon,value,stderr") throw std::runtime_error("unexpected study CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    StudyRow r{};
    std::istringstream ls(line);
    std::string a, b, c;
    std::getline(ls, a, ',');
    std::getline(ls, b, ',');
    std::getline(ls, c, ',');
    r.eps = std::stod(a);
    r.value = std::stod(b);
    r.stderr_ = std::stod(c);
    t.rows.push_back(r);
  }
  t.refit();
  return t;
}

json StudyTable::to_json() const
{
  json j;
  j["name"] = name;
  j["variant"] = variant;
  j["digest"] = digest;
  j["slope"] = fit.slope;
  j["slope_stderr"] = fit.stderr_;
  j["slope_minus_2stderr"] = fit.slope - 2.0 * fit.stderr_;
  json rs = json::array();
  for (const auto& r : rows) rs.push_back({{"epsilon", r.eps}, {"value", r.value}, {"stderr", r.stderr_}, {"meta", r.meta}});
  j["rows"] = rs;
  j["meta"] = meta;
  return j;
}

namespace {

double data_amplitude(const AnsatzParams& P)
{
  double m = 0.0;
  const DepthProfile& dp = P.depth();
  for (int i = 1; i <= 2000; ++i) {
    double r = dp.rho0() + (P.rho_max() - dp.rho0()) * i / 2000.0;
    m = std::max(m, std::abs(P.data().u0(r, dp)));
  }
  return m;
}

Vec3 point(const ConvexShore& shore, double theta, double rho, double z)
{
  auto p = shore.point_at(theta, rho);
  return {p[0], p[1], z};
}

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

}  // namespace

CheckReport check_boundary(const AnsatzParams& P, int n_points, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const DepthProfile& dp = P.depth();
  const double amp = data_amplitude(P);
  double m_surf = 0.0, m_bot = 0.0, m_shore = 0.0;
  const double span = std::min(P.rho_max(), P.rho_O() + 4.0 * P.data().width() + 1.0);
  for (int i = 0; i < n_points; ++i) {
    double th = 2.0 * M_PI * U(rng), t = 5.0 * U(rng) / P.topo().lambda_flat();
    int kind = i % 3;
    if (kind == 2) {
      double rho = dp.rho0() + (P.rho_O() - dp.rho0()) * (0.001 + 0.999 * U(rng));
      double z = -dp.phi(rho) * U(rng);
      m_shore = std::max(m_shore, norm3(assemble_U_app(P, t, point(P.topo().shore(), th, rho, z)).velocity));
      continue;
    }
    double rho = P.rho_O() + (span - P.rho_O()) * U(rng);
    double z = kind == 0 ? 0.0 : -dp.phi(rho);
    double v = norm3(assemble_U_app(P, t, point(P.topo().shore(), th, rho, z)).velocity);
    (kind == 0 ? m_surf : m_bot) = std::max(kind == 0 ? m_surf : m_bot, v);
  }
  CheckReport r;
  r.name = "check_boundary";
  r.value = std::max({m_surf, m_bot, m_shore}) / amp;
  r.threshold = 1e-10;
  r.pass = r.value <= r.threshold;
  r.detail = {{"eps", P.eps()}, {"seed", seed}, {"n_points", n_points}, {"amplitude", amp},
              {"surface", m_surf / amp}, {"bottom", m_bot / amp}, {"shore_region", m_shore / amp}};
  return r;
}

CheckReport check_divergence(const AnsatzParams& P, int n_points, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const DepthProfile& dp = P.depth();
  const double amp = data_amplitude(P);
  const double span = std::min(P.rho_max(), P.rho_O() + 4.0 * P.data().width() + 1.0);
  double m = 0.0;
  for (int i = 0; i < n_points; ++i) {
    double th = 2.0 * M_PI * U(rng), t = 5.0 * U(rng) / P.topo().lambda_flat();
    double rho = P.rho_O() + (span - P.rho_O()) * U(rng);
    double phi = dp.phi(rho), layer = 40.0 * P.sqrtE() * P.topo().delta(rho);
    double z;
    switch (i % 3) {
      case 0: z = -std::min(0.5 * phi, layer) * U(rng); break;
      case 1: z = -phi + std::min(0.5 * phi, layer) * U(rng); break;
      default: z = -phi * U(rng);
    }
    FrameJet j = jet_of(TermId::app, t, point(P.topo().shore(), th, rho, z), P);
    m = std::max(m, std::abs(divergence(j)));
  }
  CheckReport r;
  r.name = "check_divergence";
  r.value = m / amp;
  r.threshold = 1e-8;
  r.pass = r.value <= r.threshold;
  r.detail = {{"eps", P.eps()}, {"seed", seed}, {"n_points", n_points}, {"amplitude", amp}};
  return r;
}

namespace {

// fourth-order central difference of a vector field along axis k
template <class F>
std::array<double, 2> fd4(const F& f, double x, double y, int k, double h)
{
  auto at = [&](double s) { return k == 0 ? f(x + s, y) : f(x, y + s); };
  auto a = at(-2 * h), b = at(-h), c = at(h), d = at(2 * h);
  return {(a[0] - 8 * b[0] + 8 * c[0] - d[0]) / (12 * h), (a[1] - 8 * b[1] + 8 * c[1] - d[1]) / (12 * h)};
}

}  // namespace

CheckReport check_frame_identities(const ConvexShore& shore, int n_points, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto n_of = [&](double x, double y) { return shore.shore_distance(x, y).grad; };
  auto p_of = [&](double x, double y) { return shore.shore_distance(x, y).grad_perp; };
  const double h = 1e-3;
  double m = 0.0;
  for (int i = 0; i < n_points; ++i) {
    double th = 2.0 * M_PI * U(rng), rho = 0.05 + 5.0 * U(rng);
    auto p = shore.point_at(th, rho);
    ShoreSample s = shore.shore_distance(p[0], p[1]);
    auto nx = fd4(n_of, p[0], p[1], 0, h), ny = fd4(n_of, p[0], p[1], 1, h);
    auto px = fd4(p_of, p[0], p[1], 0, h), py = fd4(p_of, p[0], p[1], 1, h);
    auto along = [](const std::array<double, 2>& v, const std::array<double, 2>& dx,
                    const std::array<double, 2>& dy) {
      return std::array<double, 2>{v[0] * dx[0] + v[1] * dy[0], v[0] * dx[1] + v[1] * dy[1]};
    };
    auto pp = along(s.grad_perp, px, py), pn = along(s.grad_perp, nx, ny);
    auto nn = along(s.grad, nx, ny), np = along(s.grad, px, py);
    for (int c = 0; c < 2; ++c) {
      m = std::max(m, std::abs(pp[c] + s.lap * s.grad[c]));
      m = std::max(m, std::abs(pn[c] - s.lap * s.grad_perp[c]));
      m = std::max(m, std::abs(nn[c]));
      m = std::max(m, std::abs(np[c]));
    }
  }
  CheckReport r;
  r.name = "check_frame_identities";
  r.value = m;
  r.threshold = shore.kind() == ConvexShore::Kind::disk ? 1e-10 : 1e-6;
  r.pass = r.value <= r.threshold;
  r.detail = {{"seed", seed}, {"n_points", n_points}, {"fd_step", h}};
  return r;
}

CheckReport check_gradient_unit(const ConvexShore& shore, int n_points, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto rho_of = [&](double x, double y) {
    double r = shore.shore_distance(x, y).rho;
    return std::array<double, 2>{r, 0.0};
  };
  const double h = 1e-3;
  double m = 0.0, proj = 0.0;
  for (int i = 0; i < n_points; ++i) {
    double th = 2.0 * M_PI * U(rng), rho = 0.05 + 5.0 * U(rng);
    auto p = shore.point_at(th, rho);
    double gx = fd4(rho_of, p[0], p[1], 0, h)[0], gy = fd4(rho_of, p[0], p[1], 1, h)[0];
    m = std::max(m, std::abs(std::hypot(gx, gy) - 1.0));
    // projection residual (x - gamma(w*)) . gamma'(w*)
    double ts = shore.project(p[0], p[1]);
    auto g = shore.point_at(ts, 0.0);
    proj = std::max(proj, std::abs((p[0] - g[0]) * -std::sin(ts) + (p[1] - g[1]) * std::cos(ts)));
  }
  CheckReport r;
  r.name = "check_gradient_unit";
  r.value = m;
  r.threshold = 1e-8;
  r.pass = m <= 1e-8 && proj <= 1e-10;
  r.detail = {{"seed", seed}, {"n_points", n_points}, {"projection_residual", proj}};
  return r;
}

CheckReport check_euler_identity(const ConvexShore& shore, int n_points, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double m = 0.0;
  for (int i = 0; i < n_points; ++i) {
    double c[3], a[3], b[3], p[3];
    for (int k = 0; k < 3; ++k) {
      c[k] = 2.0 * U(rng) - 1.0;
      a[k] = 3.0 * U(rng);
      b[k] = 3.0 * U(rng);
      p[k] = 6.0 * U(rng);
    }
    double th = 2.0 * M_PI * U(rng), rho = 0.1 + 4.0 * U(rng);
    auto q = shore.point_at(th, rho);
    Jet x = Jet::variable(q[0], AX), y = Jet::variable(q[1], AY);
    Jet v = cos(1.3 * shore.frame(x, y).rho);
    for (int k = 0; k < 3; ++k) v = v + c[k] * sin(a[k] * x + b[k] * y + p[k]);
    double g[2] = {v.d[AX], v.d[AY]};
    double lap = v.hess(0, 0) + v.hess(1, 1);
    // grad_perp = (-v_y, v_x)
    double perp[2] = {-g[1], g[0]};
    double dperp[2][2] = {{-v.hess(1, 0), -v.hess(1, 1)}, {v.hess(0, 0), v.hess(0, 1)}};
    for (int comp = 0; comp < 2; ++comp) {
      double lhs = perp[0] * dperp[comp][0] + perp[1] * dperp[comp][1];
      double rhs = g[0] * v.hess(0, comp) + g[1] * v.hess(1, comp) - lap * g[comp];
      m = std::max(m, std::abs(lhs - rhs));
    }
  }
  CheckReport r;
  r.name = "check_euler_identity";
  r.value = m;
  r.threshold = 1e-8;
  r.pass = m <= r.threshold;
  r.detail = {{"seed", seed}, {"n_points", n_points}};
  return r;
}

CheckReport check_cutoff_moments()
{
  std::vector<double> br;
  for (int i = 0; i <= 40; ++i) br.push_back(-2.0 + 0.05 * i);
  Nodes1D q = composite_gauss(br, 20);
  double ik = 0.0, izk = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    ik += q.w[i] * CutoffK::k(q.x[i]);
    izk += q.w[i] * q.x[i] * CutoffK::k_prime(q.x[i]);
  }
  // tabulated antiderivative against direct quadrature
  double tab = 0.0;
  for (int i = 0; i <= 200; ++i) {
    double z = -2.0 + 0.01 * i;
    std::vector<double> b2{z};
    for (double c = std::ceil(z / 0.05) * 0.05; c < 0.0; c += 0.05)
      if (c > z + 1e-12) b2.push_back(c);
    b2.push_back(0.0);
    Nodes1D qq = composite_gauss(b2, 20);
    double direct = 0.0;
    for (std::size_t k = 0; k < qq.x.size(); ++k) direct += qq.w[k] * CutoffK::k(qq.x[k]);
    tab = std::max(tab, std::abs(direct - CutoffK::K_value(z)));
  }
  double ends = std::max({std::abs(CutoffK::K_value(0.0)), std::abs(CutoffK::K_value(-2.0)),
                          std::abs(CutoffK::K1(-2.0))});
  bool chi_ok = true;
  for (int i = 0; i <= 400; ++i) {
    double x = 1.5 * i / 400.0, c = CutoffChi::chi(x);
    if (x <= 0.5 && c != 1.0) chi_ok = false;
    if (x >= 1.0 && c != 0.0) chi_ok = false;
    if (c < 0.0 || c > 1.0) chi_ok = false;
  }
  bool k_ok = true;
  for (int i = 0; i <= 100; ++i) {
    if (CutoffK::k(-0.01 * i) != 1.0) k_ok = false;
    if (CutoffK::k(-2.0 - 0.01 * i) != 0.0) k_ok = false;
  }
  CheckReport r;
  r.name = "check_cutoff_moments";
  r.value = std::max({std::abs(ik), std::abs(izk), tab, ends});
  r.threshold = 1e-10;
  r.pass = r.value <= r.threshold && chi_ok && k_ok;
  r.detail = {{"int_k", ik}, {"int_zeta_kprime", izk}, {"table_error", tab}, {"end_values", ends},
              {"chi_shape", chi_ok}, {"k_shape", k_ok}};
  return r;
}

CheckReport check_coefficients()
{
  using mp = boost::multiprecision::cpp_dec_float_50;
  Topography topo(ConvexShore::disk(1.0), DepthProfile(DepthProfile::Family::exponential, 0.5, 1.0, 1.0), 0.5);
  mp two = 2, three = 3;
  mp lam_ref = (1 + boost::multiprecision::sqrt(two)) / 2;
  mp d1_ref = boost::multiprecision::pow(two, mp(0.75));
  mp d3_ref = 2 * boost::multiprecision::sqrt(two);
  double lam = topo.lambda_of(1.0, std::sqrt(3.0));
  double e_lam = std::abs(double(mp(lam) - lam_ref));
  double e_d1 = std::abs(double(mp(Topography::delta_of_slope(1.0)) - d1_ref));
  double e_d3 = std::abs(double(mp(Topography::delta_of_slope(std::sqrt(3.0))) - d3_ref));
  (void)three;
  bool flat = topo.lambda_of(1.0, 0.0) == topo.sqrt2beta() / 1.0 &&
              topo.lambda_of(2.0, 0.0) == topo.sqrt2beta() / 2.0;
  bool d0 = Topography::delta_of_slope(0.0) == 1.0;
  CheckReport r;
  r.name = "check_coefficients";
  r.value = std::max({e_lam, e_d1, e_d3});
  r.threshold = 1e-12;
  r.pass = r.value <= r.threshold && flat && d0;
  r.detail = {{"lambda_error", e_lam}, {"delta1_error", e_d1}, {"delta_sqrt3_error", e_d3},
              {"flat_exact", flat}, {"delta0_exact", d0}};
  return r;
}

namespace {

// c cos(k1 rho + p1) cos(k2 z1 + p2) exp(z1/2) cos(k3 z2 + p3)
struct LayerProfile {
  double c, k1, p1, k2, p2, k3, p3;
  template <class T>
  T operator()(const T& rho, const T& z1, const T& z2) const
  {
    using std::cos;
    using std::exp;
    return c * cos(k1 * rho + p1) * cos(k2 * z1 + p2) * exp(0.5 * z1) * cos(k3 * z2 + p3);
  }
  static LayerProfile random(std::mt19937_64& g)
  {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    return {2.0 * U(g) - 1.0, 3.0 * U(g), 6.3 * U(g), 2.0 * U(g), 6.3 * U(g), 2.0 * U(g), 6.3 * U(g)};
  }
};

}  // namespace

CheckReport check_advection_identity(const Topography& topo, double eps, int n_profiles, int n_points,
                             std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const DepthProfile& dp = topo.depth();
  const double s = std::sqrt(2.0 * topo.beta()) * eps, L = std::pow(eps, 0.25);
  double worst = 0.0;
  for (int pr = 0; pr < n_profiles; ++pr) {
    LayerProfile Mr = LayerProfile::random(rng), Mt = LayerProfile::random(rng);
    LayerProfile Nr = LayerProfile::random(rng), Nt = LayerProfile::random(rng), Nz = LayerProfile::random(rng);
    for (int ip = 0; ip < n_points; ++ip) {
      double th = 2.0 * M_PI * U(rng);
      double rho = dp.rho0() + 0.2 + 3.0 * U(rng);
      double phi = dp.phi(rho);
      double z = -phi + std::min(0.5 * phi, 10.0 * s * topo.delta(rho)) * U(rng);
      auto q = topo.shore().point_at(th, rho);
      // left side with generic jets
      Jet x = Jet::variable(q[0], AX), y = Jet::variable(q[1], AY), zj = Jet::variable(z, AZ);
      ShoreFrame<Jet> f = topo.shore().frame(x, y);
      Jet ph = dp.phi(f.rho), dph = dp.dphi(f.rho), del = Topography::delta_of_slope(dph);
      Jet z1 = -1.0 * (zj + ph) / (del * s), z2 = (zj + ph) / L;
      Jet mr = Mr(f.rho, z1, z2), mt = Mt(f.rho, z1, z2);
      Jet nr = Nr(f.rho, z1, z2), nt = Nt(f.rho, z1, z2), nz = Nz(f.rho, z1, z2);
      std::array<Jet, 3> M{mr * f.nx + mt * f.px, mr * f.ny + mt * f.py, -1.0 * dph * mr};
      std::array<Jet, 3> N{nr * f.nx + nt * f.px, nr * f.ny + nt * f.py, nz};
      Vec3 lhs{};
      double gradN = 0.0, magM = 0.0;
      for (int i = 0; i < 3; ++i) {
        magM += M[i].v * M[i].v;
        for (int j = 0; j < 3; ++j) {
          lhs[i] += M[j].v * N[i].d[j];
          gradN += N[i].d[j] * N[i].d[j];
        }
      }
      // right side from profile derivatives
      using D = Dual<double>;
      double r0 = f.rho.v, a1 = z1.v, a2 = z2.v;
      D dd = Topography::delta_of_slope(dp.dphi(D(r0, 1.0)));
      double dlog = dd.e / dd.v;
      auto drho = [&](const LayerProfile& p) { return p(D(r0, 1.0), D(a1), D(a2)).e; };
      auto dz1 = [&](const LayerProfile& p) { return p(D(r0), D(a1, 1.0), D(a2)).e; };
      auto tang = [&](const LayerProfile& p) { return drho(p) - dlog * a1 * dz1(p); };
      double lap = f.lap.v;
      double cr = mr.v * tang(Nr) - mt.v * nt.v * lap;
      double ct = mr.v * tang(Nt) + mt.v * nr.v * lap;
      double cz = mr.v * tang(Nz);
      Vec3 rhs{cr * f.nx.v + ct * f.px.v, cr * f.ny.v + ct * f.py.v, cz};
      double scale = std::sqrt(magM) * std::sqrt(gradN) + 1e-300;
      worst = std::max(worst, norm3({lhs[0] - rhs[0], lhs[1] - rhs[1], lhs[2] - rhs[2]}) / scale);
    }
  }
  CheckReport r;
  r.name = "check_advection_identity";
  r.value = worst;
  r.threshold = 1e-8;
  r.pass = worst <= r.threshold;
  r.detail = {{"seed", seed}, {"n_profiles", n_profiles}, {"n_points", n_points}, {"eps", eps}};
  return r;
}

CheckReport check_growth_exponents(const Topography& topo, double a, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const DepthProfile& dp = topo.depth();
  const std::vector<double> eps{0.1, 0.05, 0.025, 0.0125};
  double q_amp[3], q_k[3], q_p[3];
  for (int j = 0; j < 3; ++j) {
    q_amp[j] = 0.5 + U(rng);
    q_k[j] = 0.5 + U(rng);
    q_p[j] = 6.3 * U(rng);
  }
  using D1 = Dual<double>;
  using D2 = Dual<D1>;
  json rows = json::array();
  bool pass = true;
  double worst_margin = 1e300;
  for (int m0 = 0; m0 <= 2; ++m0) {
    std::vector<std::array<double, 3>> sup(eps.size(), {0.0, 0.0, 0.0});
    for (std::size_t ie = 0; ie < eps.size(); ++ie) {
      double L = std::pow(eps[ie], 1.0 - a);
      double rlo = dp.rho_at_depth(0.5 * L);
      double rhi = rlo + 4.0 * dp.ell();
      // sup over time as well: the constants are uniform in t
      std::vector<double> times{0.0};
      for (int i = 0; i < 40; ++i) times.push_back(1e-3 * std::pow(1e5, i / 39.0));
      for (double t : times) {
        for (int i = 0; i <= 2000; ++i) {
          // cluster samples at the inner edge of the support
          double u = double(i) / 2000.0;
          double rho = rlo + (rhi - rlo) * u * u;
          D2 r(D1(rho, 1.0), D1(1.0, 0.0));
          D2 ph = dp.phi(r), dph = dp.dphi(r);
          D2 lam = topo.lambda_of(ph, dph);
          D2 v = 1.0 - CutoffChi::chi(ph / L);
          D2 q(0.0);
          D2 inv = 1.0 / ph;
          D2 pw(1.0);
          for (int j = 0; j <= m0; ++j) {
            q = q + q_amp[j] * (1.0 + 0.25 * sin(q_k[j] * r + q_p[j])) * pw;
            pw = pw * inv;
          }
          D2 F = exp(-t * lam) * v * q;
          sup[ie][0] = std::max(sup[ie][0], std::abs(F.v.v));
          sup[ie][1] = std::max(sup[ie][1], std::abs(F.v.e));
          sup[ie][2] = std::max(sup[ie][2], std::abs(F.e.e));
        }
      }
    }
    for (int k = 0; k <= 2; ++k) {
      std::vector<double> y;
      for (auto& s : sup) y.push_back(s[k]);
      SlopeFit f = fit_loglog(eps, y);
      double bound = -(k + m0) * (1.0 - a) - 0.1;
      bool ok = f.slope >= bound;
      pass = pass && ok;
      worst_margin = std::min(worst_margin, f.slope - bound);
      rows.push_back({{"k", k}, {"m0", m0}, {"exponent", f.slope}, {"bound", bound}, {"pass", ok}});
    }
  }
  CheckReport r;
  r.name = "check_growth_exponents";
  r.value = worst_margin;
  r.threshold = 0.0;
  r.pass = pass;
  r.detail = {{"seed", seed}, {"a", a}, {"eps", eps}, {"fits", rows}};
  return r;
}

CheckReport check_curl_inequality(const Topography& topo, int n_pairs, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const DepthProfile& dp = topo.depth();
  const double ra = dp.rho0() + 0.3, rb = dp.rho0() + 2.5;
  const int n_th = 32, n_z = 10;
  Nodes1D rq = composite_gauss({ra, 0.5 * (ra + rb), rb}, 12);
  const auto& gz = gauss_legendre(n_z);
  int violations = 0;
  double worst_ratio = 0.0;
  for (int pr = 0; pr < n_pairs; ++pr) {
    double c[3][2], kx[3][2], ky[3][2], kz[3][2], ph0[3][2], cw[3], wx[3], wy[3], wz[3];
    for (int i = 0; i < 3; ++i) {
      for (int m = 0; m < 2; ++m) {
        c[i][m] = 2.0 * U(rng) - 1.0;
        kx[i][m] = 2.0 * U(rng) - 1.0;
        ky[i][m] = 2.0 * U(rng) - 1.0;
        kz[i][m] = 4.0 * U(rng) - 2.0;
        ph0[i][m] = 6.3 * U(rng);
      }
      cw[i] = 2.0 * U(rng) - 1.0;
      wx[i] = 2.0 * U(rng) - 1.0;
      wy[i] = 2.0 * U(rng) - 1.0;
      wz[i] = 3.0 * U(rng);
    }
    double trilinear = 0.0, grad2 = 0.0, wnorm2 = 0.0;
    for (std::size_t ir = 0; ir < rq.x.size(); ++ir) {
      double rho = rq.x[ir], phi = dp.phi(rho);
      for (int it = 0; it < n_th; ++it) {
        double th = 2.0 * M_PI * it / n_th;
        auto q = topo.shore().point_at(th, rho);
        double wa = rq.w[ir] * q[2] * 2.0 * M_PI / n_th;
        double col_w = 0.0;
        for (int iz = 0; iz < n_z; ++iz) {
          double z = -0.5 * phi * (1.0 - gz.x[iz]);
          double wzq = 0.5 * phi * gz.w[iz];
          Jet x = Jet::variable(q[0], AX), y = Jet::variable(q[1], AY), zj = Jet::variable(z, AZ);
          Jet r = topo.shore().frame(x, y).rho;
          Jet ph = dp.phi(r);
          Jet win = smooth_step((r - ra) / 0.5) * smooth_step((rb - r) / 0.5);
          Jet env = zj * zj * (zj + ph) * (zj + ph) * win;
          std::array<Jet, 3> A;
          for (int i = 0; i < 3; ++i) {
            Jet s(0.0);
            for (int m = 0; m < 2; ++m) s = s + c[i][m] * sin(kx[i][m] * x + ky[i][m] * y + kz[i][m] * zj + ph0[i][m]);
            A[i] = env * s;
          }
          // delta = curl A and its gradient from the Hessian of A
          double dv[3], dg[3][3];
          dv[0] = A[2].d[AY] - A[1].d[AZ];
          dv[1] = A[0].d[AZ] - A[2].d[AX];
          dv[2] = A[1].d[AX] - A[0].d[AY];
          for (int j = 0; j < 3; ++j) {
            dg[0][j] = A[2].hess(AY, j) - A[1].hess(AZ, j);
            dg[1][j] = A[0].hess(AZ, j) - A[2].hess(AX, j);
            dg[2][j] = A[1].hess(AX, j) - A[0].hess(AY, j);
          }
          double w[3];
          for (int i = 0; i < 3; ++i) w[i] = cw[i] * std::cos(wx[i] * q[0] + wy[i] * q[1] + wz[i] * z);
          double tri = 0.0, g2 = 0.0, w2 = 0.0;
          for (int i = 0; i < 3; ++i) {
            double adv = 0.0;
            for (int j = 0; j < 3; ++j) {
              adv += dv[j] * dg[i][j];
              g2 += dg[i][j] * dg[i][j];
            }
            tri += adv * w[i];
            w2 += w[i] * w[i];
          }
          double dphi_w = std::min(-z, phi + z);
          trilinear += wa * wzq * tri;
          grad2 += wa * wzq * g2;
          col_w += wzq * dphi_w * w2;
        }
        wnorm2 = std::max(wnorm2, col_w);
      }
    }
    double rhs = grad2 * std::sqrt(wnorm2);
    double ratio = std::abs(trilinear) / rhs;
    worst_ratio = std::max(worst_ratio, ratio);
    if (ratio > 1.0) ++violations;
  }
  CheckReport r;
  r.name = "check_curl_inequality";
  r.value = worst_ratio;
  r.threshold = 1.0;
  r.pass = violations == 0;
  r.detail = {{"seed", seed}, {"n_pairs", n_pairs}, {"violations", violations}};
  return r;
}

double fitted_decay_rate(const std::vector<double>& t, const std::vector<double>& v, double t_from)
{
  double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_from || !(v[i] > 0.0)) continue;
    double y = std::log(v[i]);
    n += 1;
    st += t[i];
    sy += y;
    stt += t[i] * t[i];
    sty += t[i] * y;
  }
  if (n < 2) return 0.0;
  return -(n * sty - st * sy) / (n * stt - st * st);
}

namespace {

using TimeSeriesFn = std::function<double(const AnsatzParams&, const Quadrature&, double)>;

struct SampledSeries {
  std::vector<double> t, v;
};

SampledSeries time_series(const StudySetup& s, const AnsatzParams& P, const TimeSeriesFn& f)
{
  Quadrature q = build_quadrature(P, s.quad);
  SampledSeries out;
  out.t = geometric_time_grid(s.t_star(), s.n_t);
  for (double t : out.t) out.v.push_back(f(P, q, t));
  return out;
}

StudyTable base_table(const StudySetup& s, const std::string& name, const std::string& variant)
{
  StudyTable tab;
  tab.name = name;
  tab.variant = variant;
  tab.digest = s.digest;
  tab.meta["a"] = s.a;
  tab.meta["t_star"] = s.t_star();
  tab.meta["t_grid"] = geometric_time_grid(s.t_star(), s.n_t);
  tab.meta["eps_grid"] = s.eps;
  return tab;
}

}  // namespace

StudyTable study_ansatz_convergence(const StudySetup& s, const std::string& variant)
{
  TermMask m;
  if (variant == "full")
    m = TermMask::full();
  else if (variant == "interior_only")
    m = TermMask::interior_only();
  else
    throw std::invalid_argument("unknown convergence variant: " + variant);
  StudyTable tab = base_table(s, "convergence", variant);
  for (double eps : s.eps) {
    AnsatzParams P = s.params(eps);
    SampledSeries ser = time_series(s, P, [&](const AnsatzParams& PP, const Quadrature& q, double t) {
      return norm_L2(q, [&](double x, double y, double z, double) {
        AnsatzTerms<double> A = evaluate_terms<double>(PP, t, x, y, z);
        FrameVector<double> v = assemble_frame(PP, A, m);
        return Vec3{v.r - A.limit.r, v.th - A.limit.th, v.z - A.limit.z};
      });
    });
    std::size_t k = std::max_element(ser.v.begin(), ser.v.end()) - ser.v.begin();
    StudyRow r{eps, ser.v[k], 0.0};
    r.meta = {{"t_at_sup", ser.t[k]},
              {"tail_decay_rate", fitted_decay_rate(ser.t, ser.v, 0.25 * s.t_star())},
              {"series", ser.v}};
    tab.rows.push_back(r);
  }
  tab.meta["lambda_flat"] = s.topo.lambda_flat();
  tab.refit();
  return tab;
}

StudyTable study_residual(const StudySetup& s, const std::string& variant)
{
  if (variant != "full") throw std::invalid_argument("unknown residual variant: " + variant);
  StudyTable tab = base_table(s, "residual", variant);
  for (double eps : s.eps) {
    AnsatzParams P = s.params(eps);
    SampledSeries ser = time_series(s, P, [&](const AnsatzParams& PP, const Quadrature& q, double t) {
      return norm_L2(q, [&](double x, double y, double z, double) {
        return stokes_coriolis_residual(PP, t, {x, y, z});
      });
    });
    TimeIntegral ti = time_L1(ser.t, ser.v, s.topo.lambda_flat());
    StudyRow r{eps, ti.value, ti.tail};
    r.meta = {{"series", ser.v}};
    tab.rows.push_back(r);
  }
  tab.refit();
  return tab;
}

StudyTable study_nonlinear(const StudySetup& s, const std::string& variant)
{
  TermMask m = TermMask::full();
  bool with_limit = true;
  if (variant == "surface_self") {
    m = TermMask::surface_order0();
    with_limit = false;
  } else if (variant != "full") {
    throw std::invalid_argument("unknown nonlinear variant: " + variant);
  }
  StudyTable tab = base_table(s, "nonlinear", variant);
  for (double eps : s.eps) {
    AnsatzParams P = s.params(eps);
    SampledSeries ser = time_series(s, P, [&](const AnsatzParams& PP, const Quadrature& q, double t) {
      return norm_L2(q, [&](double x, double y, double z, double) {
        return nonlinear_structure_error(PP, t, {x, y, z}, m, with_limit);
      });
    });
    TimeIntegral ti = time_L1(ser.t, ser.v, s.topo.lambda_flat());
    StudyRow r{eps, ti.value, ti.tail};
    r.meta = {{"series", ser.v}};
    tab.rows.push_back(r);
  }
  tab.refit();
  return tab;
}

GradientBudget check_gradient_budget(const StudySetup& s)
{
  GradientBudget out;
  out.table = base_table(s, "gradient", "interior");
  const TermMask m = TermMask::interior();
  for (double eps : s.eps) {
    AnsatzParams P = s.params(eps);
    SampledSeries ser = time_series(s, P, [&](const AnsatzParams& PP, const Quadrature& q, double t) {
      return norm_Linf(q, [&](double x, double y, double z, double) {
        AnsatzTerms<Jet> A = terms_jet(PP, t, {x, y, z});
        FrameJet j = app_jet(PP, A, m);
        double g = 0.0;
        for (int i = 0; i < 3; ++i)
          for (int k = 0; k < 3; ++k) g += j.d(i, k) * j.d(i, k);
        return std::sqrt(g);
      });
    });
    TimeIntegral ti = time_L1(ser.t, ser.v, s.topo.lambda_flat());
    StudyRow r{eps, ti.value, ti.tail};
    r.meta = {{"series", ser.v}};
    out.table.rows.push_back(r);
  }
  out.table.refit();
  double mx = 0.0, mn = 1e300;
  for (const auto& r : out.table.rows) {
    mx = std::max(mx, r.value);
    mn = std::min(mn, r.value);
  }
  out.report.name = "check_gradient_budget";
  out.report.value = mx / mn;
  out.report.threshold = 2.0;
  out.report.pass = mx / mn <= 2.0;
  out.report.detail = {{"budgets", out.table.to_json()["rows"]}, {"data_family", s.data.family_name()}};
  return out;
}

}  // namespace ekman
