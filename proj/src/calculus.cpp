#include "ekman/calculus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ekman {

TermId term_from_name(const std::string& name)
{
  static const std::map<std::string, TermId> names = {
      {"U0_int", TermId::U0_int},   {"U0_BL_surf", TermId::U0_surf}, {"U0_BL_bot", TermId::U0_bot},
      {"Ua_BL_surf", TermId::Ua_surf}, {"Ua_BL_bot", TermId::Ua_bot}, {"U1_int", TermId::U1_int},
      {"U1_BL_surf", TermId::U1_surf}, {"U1_BL_bot", TermId::U1_bot}, {"U2_BL_surf", TermId::U2_surf},
      {"U2_BL_bot", TermId::U2_bot}, {"limit", TermId::limit},     {"U_app", TermId::app}};
  auto it = names.find(name);
  if (it == names.end()) throw std::invalid_argument("unknown term id: " + name);
  return it->second;
}

AnsatzTerms<Jet> terms_jet(const AnsatzParams& P, double t, const Vec3& x)
{
  return evaluate_terms<Jet>(P, Jet::variable(t, AT), Jet::variable(x[0], AX),
                             Jet::variable(x[1], AY), Jet::variable(x[2], AZ));
}

FrameJet to_jet(const ShoreFrame<Jet>& f, const FrameVector<Jet>& v)
{
  FrameJet j;
  j.c = to_cartesian(f, v);
  return j;
}

FrameJet app_jet(const AnsatzParams& P, const AnsatzTerms<Jet>& A, const TermMask& m)
{
  return to_jet(A.frame, assemble_frame(P, A, m));
}

FrameJet jet_of(TermId id, double t, const Vec3& x, const AnsatzParams& P)
{
  AnsatzTerms<Jet> A = terms_jet(P, t, x);
  switch (id) {
    case TermId::U0_int: return to_jet(A.frame, A.U0_int);
    case TermId::U0_surf: return to_jet(A.frame, A.U0_surf);
    case TermId::U0_bot: return to_jet(A.frame, A.U0_bot);
    case TermId::Ua_surf: return to_jet(A.frame, A.Ua_surf);
    case TermId::Ua_bot: return to_jet(A.frame, A.Ua_bot);
    case TermId::U1_int: return to_jet(A.frame, A.U1_int);
    case TermId::U1_surf: return to_jet(A.frame, A.U1_surf);
    case TermId::U1_bot: return to_jet(A.frame, A.U1_bot);
    case TermId::U2_surf: return to_jet(A.frame, A.U2_surf);
    case TermId::U2_bot: return to_jet(A.frame, A.U2_bot);
    case TermId::limit: return to_jet(A.frame, A.limit);
    case TermId::app: return app_jet(P, A, TermMask::full());
  }
  throw std::invalid_argument("unknown term id");
}

double divergence(const FrameJet& j) { return j.d(0, AX) + j.d(1, AY) + j.d(2, AZ); }

Vec3 laplacian(const FrameJet& j) { return {j.lap(0), j.lap(1), j.lap(2)}; }

Vec3 time_derivative(const FrameJet& j) { return {j.dt(0), j.dt(1), j.dt(2)}; }

Vec3 coriolis(const Vec3& v) { return {-v[1], v[0], 0.0}; }

Vec3 advect(const FrameJet& j)
{
  Vec3 u = j.value(), out{};
  for (int i = 0; i < 3; ++i) out[i] = u[0] * j.d(i, AX) + u[1] * j.d(i, AY) + u[2] * j.d(i, AZ);
  return out;
}

Vec3 residual_from_terms(const AnsatzParams& P, const AnsatzTerms<Jet>& A, const TermMask& m)
{
  FrameJet U = app_jet(P, A, m);
  const double eps = P.eps(), nu = eps * P.beta();
  Vec3 cor = coriolis(U.value());
  Vec3 gp{0.0, 0.0, 0.0};
  if (m.U0_int) {
    double u = A.col.u.v;
    gp[0] += u * A.frame.nx.v / eps;
    gp[1] += u * A.frame.ny.v / eps;
  }
  if (m.U0_bot)
    for (int i = 0; i < 3; ++i) gp[i] += A.P1_bot.d[i];
  Vec3 e{};
  for (int i = 0; i < 3; ++i) e[i] = U.dt(i) - nu * U.lap(i) + cor[i] / eps + gp[i];
  return e;
}

Vec3 stokes_coriolis_residual(const AnsatzParams& P, double t, const Vec3& x, const TermMask& m)
{
  return residual_from_terms(P, terms_jet(P, t, x), m);
}

Vec3 nonlinear_structure_error(const AnsatzParams& P, double t, const Vec3& x, const TermMask& m,
                               bool with_limit)
{
  AnsatzTerms<Jet> A = terms_jet(P, t, x);
  Vec3 e = advect(app_jet(P, A, m));
  if (with_limit) {
    double ub = A.col.ubar.v, lap = A.frame.lap.v;
    e[0] += ub * ub * lap * A.frame.nx.v;
    e[1] += ub * ub * lap * A.frame.ny.v;
  }
  return e;
}

std::size_t Quadrature::n_points() const
{
  std::size_t n = 0;
  for (const auto& c : columns) n += c.z.x.size();
  return n;
}

namespace {

Nodes1D vertical_nodes(double phi, double s_top, double s_bot, double L, const QuadSettings& s)
{
  std::vector<double> br{-phi, 0.0};
  const double mult[] = {1.0, 2.0, 4.0, 8.0, 16.0, s.layer_M};
  for (double m : mult) {
    if (m * s_top < 0.5 * phi) br.push_back(-m * s_top);
    if (m * s_bot < 0.5 * phi) br.push_back(-phi + m * s_bot);
  }
  for (double f : {0.5, 1.0}) {
    if (f * L < 0.5 * phi) {
      br.push_back(-f * L);
      br.push_back(-phi + f * L);
    }
  }
  std::sort(br.begin(), br.end());
  Nodes1D out;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    double a = br[i], b = br[i + 1];
    if (b - a < 1e-13 * (1.0 + phi)) continue;
    bool layer = (b <= -phi + s.layer_M * s_bot + 1e-14) || (a >= -s.layer_M * s_top - 1e-14);
    out.append_panel(a, b, layer ? s.n_z_layer : s.n_z_interior);
  }
  return out;
}

}  // namespace

Quadrature build_quadrature(const Topography& topo, double rho_lo, double rho_hi, double sqrtE,
                            double L, const std::vector<double>& extra_breaks,
                            const QuadSettings& s)
{
  std::vector<double> br{rho_lo, rho_hi};
  for (double b : extra_breaks)
    if (b > rho_lo && b < rho_hi) br.push_back(b);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-12; }),
           br.end());
  Nodes1D radial = composite_gauss(br, s.n_rho);

  Quadrature q;
  const ConvexShore& shore = topo.shore();
  int nth = shore.kind() == ConvexShore::Kind::disk ? std::max(1, s.n_theta) : std::max(8, s.n_theta);
  for (std::size_t i = 0; i < radial.x.size(); ++i) {
    double rho = radial.x[i];
    double phi = topo.depth().phi(rho);
    double sb = topo.delta(rho) * sqrtE;
    Nodes1D zn = vertical_nodes(phi, sqrtE, sb, L, s);
    for (int k = 0; k < nth; ++k) {
      double th = 2.0 * M_PI * k / nth;
      auto p = shore.point_at(th, rho);
      q.columns.push_back({p[0], p[1], rho, phi, radial.w[i] * p[2] * 2.0 * M_PI / nth, zn});
    }
  }
  return q;
}

Quadrature build_quadrature(const AnsatzParams& P, const QuadSettings& s)
{
  const DepthProfile& dp = P.depth();
  std::vector<double> br{P.rho_O()};
  if (2.5 * P.L() < dp.H()) br.push_back(dp.rho_at_depth(2.5 * P.L()));
  double w = P.data().width();
  for (double r = dp.rho0() + w; r < P.rho_max(); r += w) br.push_back(r);
  return build_quadrature(P.topo(), dp.rho0(), P.rho_max(), P.sqrtE(), P.L(), br, s);
}

double integrate(const Quadrature& q, const ScalarSampler& f)
{
  std::vector<double> part(q.columns.size(), 0.0);
  parallel_for(q.columns.size(), [&](std::size_t i) {
    const QuadColumn& c = q.columns[i];
    double acc = 0.0;
    for (std::size_t k = 0; k < c.z.x.size(); ++k) acc += c.z.w[k] * f(c.x, c.y, c.z.x[k], c.rho);
    part[i] = acc * c.weight;
  });
  double total = 0.0;
  for (double v : part) total += v;
  return total;
}

namespace {

std::vector<double> column_sq(const Quadrature& q, const FieldSampler& f, bool weighted)
{
  std::vector<double> part(q.columns.size(), 0.0);
  parallel_for(q.columns.size(), [&](std::size_t i) {
    const QuadColumn& c = q.columns[i];
    double acc = 0.0;
    for (std::size_t k = 0; k < c.z.x.size(); ++k) {
      double z = c.z.x[k];
      Vec3 v = f(c.x, c.y, z, c.rho);
      double w = c.z.w[k];
      if (weighted) w *= std::min(-z, c.phi + z);
      acc += w * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    }
    part[i] = acc;
  });
  return part;
}

}  // namespace

double norm_L2(const Quadrature& q, const FieldSampler& f)
{
  std::vector<double> part = column_sq(q, f, false);
  double total = 0.0;
  for (std::size_t i = 0; i < part.size(); ++i) total += part[i] * q.columns[i].weight;
  return std::sqrt(total);
}

double norm_LinfH_L2V(const Quadrature& q, const FieldSampler& f)
{
  std::vector<double> part = column_sq(q, f, false);
  double m = 0.0;
  for (double v : part) m = std::max(m, v);
  return std::sqrt(m);
}

double norm_weighted_dphi(const Quadrature& q, const FieldSampler& f)
{
  std::vector<double> part = column_sq(q, f, true);
  double m = 0.0;
  for (double v : part) m = std::max(m, v);
  return std::sqrt(m);
}

double norm_Linf(const Quadrature& q, const ScalarSampler& f)
{
  std::vector<double> part(q.columns.size(), 0.0);
  parallel_for(q.columns.size(), [&](std::size_t i) {
    const QuadColumn& c = q.columns[i];
    double m = 0.0;
    for (double z : c.z.x) m = std::max(m, std::abs(f(c.x, c.y, z, c.rho)));
    part[i] = m;
  });
  double m = 0.0;
  for (double v : part) m = std::max(m, v);
  return m;
}

std::vector<double> geometric_time_grid(double t_star, int n)
{
  std::vector<double> t(n, 0.0);
  for (int k = 1; k < n; ++k) t[k] = t_star * std::pow(10.0, -3.0 * double(n - 1 - k) / double(n - 2));
  return t;
}

TimeIntegral time_L1(const std::vector<double>& t, const std::vector<double>& norms, double lambda)
{
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) acc += 0.5 * (t[k + 1] - t[k]) * (norms[k] + norms[k + 1]);
  return {acc, norms.back() / lambda};
}

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int n) { g_threads = std::max(1, n); }

int threads()
{
  int n = g_threads.load();
  if (n <= 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
  int nt = std::min<std::size_t>(threads(), n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  for (int k = 0; k < nt; ++k)
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < n; i = next++) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
        next = n;
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ekman
