#include "ekman/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <Eigen/SparseLU>
#include <json.hpp>

#include "ekman/errors.hpp"

namespace ekman {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

double Grid2D::sigma_of(double xi) const
{
  return -0.5 * (1.0 - std::tanh(stretch * (2.0 * xi - 1.0)) / std::tanh(stretch));
}

double Grid2D::xi_of(double s) const
{
  double v = std::clamp((1.0 + 2.0 * s) * std::tanh(stretch), -1.0 + 1e-16, 1.0 - 1e-16);
  return 0.5 * (std::atanh(v) / stretch + 1.0);
}

double Grid2D::min_boundary_dz() const
{
  double ds = std::max(sigma[1] - sigma[0], sigma.back() - sigma[sigma.size() - 2]);
  return ds * *std::max_element(phi.begin(), phi.end());
}

Grid2D make_grid(const DepthProfile& depth, double R, double rho_min, double rho_max, int nr,
                 int nz, double stretch)
{
  Grid2D g;
  g.R = R;
  g.nr = nr;
  g.nz = nz;
  g.stretch = stretch;
  for (int i = 0; i <= 2 * nr; ++i) {
    double rho = rho_min + (rho_max - rho_min) * i / (2.0 * nr);
    g.rho.push_back(rho);
    g.phi.push_back(depth.phi(rho));
  }
  for (int j = 0; j <= 2 * nz; ++j) g.sigma.push_back(g.sigma_of(j / (2.0 * nz)));
  g.sigma.front() = -1.0;
  g.sigma.back() = 0.0;
  return g;
}

namespace {

const double gq3_x[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
const double gq3_w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
const double gq4_x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                         0.8611363115940526};
const double gq4_w[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                         0.3478548451374538};

void q2_1d(double x, double n[3], double d[3])
{
  n[0] = 0.5 * x * (x - 1.0);
  n[1] = 1.0 - x * x;
  n[2] = 0.5 * x * (x + 1.0);
  d[0] = x - 0.5;
  d[1] = -2.0 * x;
  d[2] = x + 0.5;
}

// shape data at one reference point of one element
struct Shape {
  double N[9], Nr[9], Nz[9];
  double psi[4];
  double r, z, detJ;
};

}  // namespace

struct AxisymmetricSolver::Impl {
  int NR, NS;                  // Q2 node counts
  std::vector<int> vel_index;  // (node * 3 + comp) -> free index or -1
  std::vector<int> p_index;    // corner node -> pressure index or -1
  int n_vel = 0, n_p = 0;
  SpMat M, A, B, absB, K;
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;

  int elem_node(const Grid2D&, int ei, int ej, int a, int b) const
  {
    return (2 * ei + a) * NS + (2 * ej + b);
  }
  int corner(const Grid2D& g, int ei, int ej, int a, int b) const
  {
    return (ei + a) * (g.nz + 1) + (ej + b);
  }

  Shape shape(const Grid2D& g, int ei, int ej, double xi, double eta) const
  {
    Shape s;
    double nx[3], dx[3], ny[3], dy[3];
    q2_1d(xi, nx, dx);
    q2_1d(eta, ny, dy);
    double r_xi = 0, r_eta = 0, z_xi = 0, z_eta = 0;
    s.r = 0;
    s.z = 0;
    double Nx[9], Ny[9];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        int k = a * 3 + b;
        int i = 2 * ei + a, j = 2 * ej + b;
        double rr = g.r(i), zz = g.z(i, j);
        s.N[k] = nx[a] * ny[b];
        Nx[k] = dx[a] * ny[b];
        Ny[k] = nx[a] * dy[b];
        s.r += s.N[k] * rr;
        s.z += s.N[k] * zz;
        r_xi += Nx[k] * rr;
        r_eta += Ny[k] * rr;
        z_xi += Nx[k] * zz;
        z_eta += Ny[k] * zz;
      }
    s.detJ = r_xi * z_eta - r_eta * z_xi;
    if (!(s.detJ > 0.0)) throw DomainError("sigma mapping is not orientation preserving");
    for (int k = 0; k < 9; ++k) {
      s.Nr[k] = (z_eta * Nx[k] - z_xi * Ny[k]) / s.detJ;
      s.Nz[k] = (-r_eta * Nx[k] + r_xi * Ny[k]) / s.detJ;
    }
    double px[2] = {0.5 * (1 - xi), 0.5 * (1 + xi)}, py[2] = {0.5 * (1 - eta), 0.5 * (1 + eta)};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) s.psi[a * 2 + b] = px[a] * py[b];
    return s;
  }

  Vec gather(const SolverState& s) const
  {
    Vec v = Vec::Zero(n_vel);
    for (int n = 0; n < NR * NS; ++n) {
      const double c[3] = {s.ur[n], s.uth[n], s.uz[n]};
      for (int k = 0; k < 3; ++k)
        if (int f = vel_index[3 * n + k]; f >= 0) v[f] = c[k];
    }
    return v;
  }
  void scatter(const Vec& v, SolverState& s) const
  {
    for (int n = 0; n < NR * NS; ++n) {
      double* c[3] = {&s.ur[n], &s.uth[n], &s.uz[n]};
      for (int k = 0; k < 3; ++k) {
        int f = vel_index[3 * n + k];
        *c[k] = f >= 0 ? v[f] : 0.0;
      }
    }
  }
};

AxisymmetricSolver::AxisymmetricSolver(const Topography& topo, double eps, double a,
                                       const SolverSettings& s)
    : topo_(topo), eps_(eps), a_(a), set_(s)
{
  if (topo.shore().kind() != ConvexShore::Kind::disk)
    throw ConfigError("the axisymmetric solver needs a disk shore");
  if (s.nr < 2 || s.nz < 2) throw ConfigError("solver.nr and solver.nz must be at least 2");
  const DepthProfile& dp = topo.depth();
  nu_ = eps * topo.beta();
  dt_ = s.dt > 0.0 ? s.dt : 0.1 * eps;
  tmax_ = s.tmax > 0.0 ? s.tmax : 2.0 / topo.lambda_flat();
  double L = std::pow(eps, 1.0 - a);
  double rho_min = s.rho_min > 0.0 ? s.rho_min : dp.rho_at_depth(s.wall_factor * L);
  double rho_max = s.rout > 0.0 ? s.rout : rho_min + 6.0;
  if (rho_max <= rho_min) throw ConfigError("solver.rout must lie beyond the inner wall");
  grid_ = make_grid(dp, topo.shore().R(), rho_min, rho_max, s.nr, s.nz, s.stretch);

  const double sqrtE = std::sqrt(2.0 * topo.beta()) * eps;
  if (grid_.min_boundary_dz() > 0.25 * sqrtE) {
    int need = s.nz;
    while (need < 100000) {
      need = int(need * 1.25) + 1;
      Grid2D t = make_grid(dp, grid_.R, rho_min, rho_max, 2, need, s.stretch);
      if (t.min_boundary_dz() <= 0.25 * sqrtE) break;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "boundary layer under-resolved: vertical spacing %.3g exceeds sqrt(E)/4 = %.3g; "
                  "use solver.nz >= %d",
                  grid_.min_boundary_dz(), 0.25 * sqrtE, need);
    throw ConfigError(buf);
  }

  impl_ = std::make_unique<Impl>();
  Impl& m = *impl_;
  m.NR = grid_.n_rho();
  m.NS = grid_.n_sigma();
  m.vel_index.assign(3 * m.NR * m.NS, -1);
  for (int i = 1; i < m.NR - 1; ++i)
    for (int j = 1; j < m.NS - 1; ++j)
      for (int k = 0; k < 3; ++k) m.vel_index[3 * grid_.node(i, j) + k] = m.n_vel++;
  const int NC = (s.nr + 1) * (s.nz + 1);
  m.p_index.assign(NC, -1);
  // pressure is fixed up to a constant: drop the first corner
  for (int c = 1; c < NC; ++c) m.p_index[c] = m.n_p++;

  std::vector<Eigen::Triplet<double>> tm, ta, tc, tb;
  for (int ei = 0; ei < s.nr; ++ei)
    for (int ej = 0; ej < s.nz; ++ej) {
      int nodes[9], corners[4];
      for (int a2 = 0; a2 < 3; ++a2)
        for (int b2 = 0; b2 < 3; ++b2) nodes[a2 * 3 + b2] = m.elem_node(grid_, ei, ej, a2, b2);
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) corners[a2 * 2 + b2] = m.corner(grid_, ei, ej, a2, b2);
      double Me[9][9] = {}, Ae[9][9] = {}, Ar[9][9] = {}, Be_r[4][9] = {}, Be_z[4][9] = {};
      for (int qa = 0; qa < 3; ++qa)
        for (int qb = 0; qb < 3; ++qb) {
          Shape sh = m.shape(grid_, ei, ej, gq3_x[qa], gq3_x[qb]);
          double w = gq3_w[qa] * gq3_w[qb] * sh.detJ * 2.0 * M_PI * sh.r;
          for (int p = 0; p < 9; ++p) {
            for (int q = 0; q < 9; ++q) {
              Me[p][q] += w * sh.N[p] * sh.N[q];
              Ae[p][q] += w * (sh.Nr[p] * sh.Nr[q] + sh.Nz[p] * sh.Nz[q]);
              Ar[p][q] += w * sh.N[p] * sh.N[q] / (sh.r * sh.r);
            }
            for (int c = 0; c < 4; ++c) {
              Be_r[c][p] -= w * sh.psi[c] * (sh.Nr[p] + sh.N[p] / sh.r);
              Be_z[c][p] -= w * sh.psi[c] * sh.Nz[p];
            }
          }
        }
      for (int p = 0; p < 9; ++p) {
        for (int q = 0; q < 9; ++q) {
          for (int k = 0; k < 3; ++k) {
            int fp = m.vel_index[3 * nodes[p] + k], fq = m.vel_index[3 * nodes[q] + k];
            if (fp < 0 || fq < 0) continue;
            tm.emplace_back(fp, fq, Me[p][q]);
            ta.emplace_back(fp, fq, Ae[p][q] + (k < 2 ? Ar[p][q] : 0.0));
          }
          // e_z ^ u = (-u_theta, u_r, 0)
          int pr = m.vel_index[3 * nodes[p]], pt = m.vel_index[3 * nodes[p] + 1];
          int qr = m.vel_index[3 * nodes[q]], qt = m.vel_index[3 * nodes[q] + 1];
          if (pr >= 0 && qt >= 0) tc.emplace_back(pr, qt, -Me[p][q]);
          if (pt >= 0 && qr >= 0) tc.emplace_back(pt, qr, Me[p][q]);
        }
        for (int c = 0; c < 4; ++c) {
          int pc = m.p_index[corners[c]];
          if (pc < 0) continue;
          int fr = m.vel_index[3 * nodes[p]], fz = m.vel_index[3 * nodes[p] + 2];
          if (fr >= 0) tb.emplace_back(pc, fr, Be_r[c][p]);
          if (fz >= 0) tb.emplace_back(pc, fz, Be_z[c][p]);
        }
      }
    }
  m.M.resize(m.n_vel, m.n_vel);
  m.M.setFromTriplets(tm.begin(), tm.end());
  m.A.resize(m.n_vel, m.n_vel);
  m.A.setFromTriplets(ta.begin(), ta.end());
  SpMat C(m.n_vel, m.n_vel);
  C.setFromTriplets(tc.begin(), tc.end());
  m.B.resize(m.n_p, m.n_vel);
  m.B.setFromTriplets(tb.begin(), tb.end());
  m.absB = m.B.cwiseAbs();

  SpMat Kv = m.M / dt_ + nu_ * m.A;
  if (s.coriolis) Kv += C / eps;
  // saddle-point system [Kv B^T; B 0] for (u, p / eps)
  std::vector<Eigen::Triplet<double>> tk;
  tk.reserve(Kv.nonZeros() + 2 * m.B.nonZeros());
  for (int k = 0; k < Kv.outerSize(); ++k)
    for (SpMat::InnerIterator it(Kv, k); it; ++it) tk.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < m.B.outerSize(); ++k)
    for (SpMat::InnerIterator it(m.B, k); it; ++it) {
      tk.emplace_back(m.n_vel + it.row(), it.col(), it.value());
      tk.emplace_back(it.col(), m.n_vel + it.row(), it.value());
    }
  m.K.resize(m.n_vel + m.n_p, m.n_vel + m.n_p);
  m.K.setFromTriplets(tk.begin(), tk.end());
  m.K.makeCompressed();
  m.lu.compute(m.K);
  if (m.lu.info() != Eigen::Success) throw NonConvergenceError("sparse LU factorisation failed");
}

AxisymmetricSolver::~AxisymmetricSolver() = default;

std::size_t AxisymmetricSolver::n_unknowns() const { return impl_->n_vel + impl_->n_p; }

SolverState AxisymmetricSolver::init(const std::function<double(double, double)>& u_theta) const
{
  const Impl& m = *impl_;
  SolverState s;
  s.ur.assign(m.NR * m.NS, 0.0);
  s.uth.assign(m.NR * m.NS, 0.0);
  s.uz.assign(m.NR * m.NS, 0.0);
  s.p.assign((grid_.nr + 1) * (grid_.nz + 1), 0.0);
  for (int i = 1; i < m.NR - 1; ++i)
    for (int j = 1; j < m.NS - 1; ++j) s.uth[grid_.node(i, j)] = u_theta(grid_.rho[i], grid_.z(i, j));
  return s;
}

StepDiagnostics AxisymmetricSolver::step(SolverState& s) const
{
  const Impl& m = *impl_;
  Vec u = m.gather(s);
  double e_old = 0.5 * u.dot(m.M * u);
  Vec rhs = Vec::Zero(m.n_vel + m.n_p);
  rhs.head(m.n_vel) = m.M * u / dt_;
  if (set_.nonlinear) {
    // explicit (u . grad) u with the axisymmetric curvature terms
    for (int ei = 0; ei < grid_.nr; ++ei)
      for (int ej = 0; ej < grid_.nz; ++ej)
        for (int qa = 0; qa < 3; ++qa)
          for (int qb = 0; qb < 3; ++qb) {
            Shape sh = m.shape(grid_, ei, ej, gq3_x[qa], gq3_x[qb]);
            double w = gq3_w[qa] * gq3_w[qb] * sh.detJ * 2.0 * M_PI * sh.r;
            double v[3] = {}, dr[3] = {}, dz[3] = {};
            int nodes[9];
            for (int a2 = 0; a2 < 3; ++a2)
              for (int b2 = 0; b2 < 3; ++b2) nodes[a2 * 3 + b2] = m.elem_node(grid_, ei, ej, a2, b2);
            for (int k = 0; k < 9; ++k) {
              const double c[3] = {s.ur[nodes[k]], s.uth[nodes[k]], s.uz[nodes[k]]};
              for (int q = 0; q < 3; ++q) {
                v[q] += sh.N[k] * c[q];
                dr[q] += sh.Nr[k] * c[q];
                dz[q] += sh.Nz[k] * c[q];
              }
            }
            double f[3] = {v[0] * dr[0] + v[2] * dz[0] - v[1] * v[1] / sh.r,
                           v[0] * dr[1] + v[2] * dz[1] + v[0] * v[1] / sh.r,
                           v[0] * dr[2] + v[2] * dz[2]};
            for (int k = 0; k < 9; ++k)
              for (int q = 0; q < 3; ++q)
                if (int fidx = m.vel_index[3 * nodes[k] + q]; fidx >= 0) rhs[fidx] -= w * sh.N[k] * f[q];
          }
  }
  Vec x = m.lu.solve(rhs);
  if (m.lu.info() != Eigen::Success) throw NonConvergenceError("sparse LU solve failed");
  Vec un = x.head(m.n_vel);
  m.scatter(un, s);
  for (int c = 0; c < int(s.p.size()); ++c) s.p[c] = m.p_index[c] >= 0 ? eps_ * x[m.n_vel + m.p_index[c]] : 0.0;
  s.t += dt_;
  StepDiagnostics d;
  d.energy = 0.5 * un.dot(m.M * un);
  d.dissipation = nu_ * un.dot(m.A * un);
  d.divergence = divergence_norm(s);
  d.energy_defect = d.energy + dt_ * d.dissipation - e_old;
  if (!set_.nonlinear && d.energy > e_old * (1.0 + 1e-6))
    throw NonConvergenceError("energy grew during a linear step");
  return d;
}

double AxisymmetricSolver::energy(const SolverState& s) const
{
  Vec u = impl_->gather(s);
  return 0.5 * u.dot(impl_->M * u);
}

double AxisymmetricSolver::dissipation_rate(const SolverState& s) const
{
  Vec u = impl_->gather(s);
  return nu_ * u.dot(impl_->A * u);
}

double AxisymmetricSolver::divergence_norm(const SolverState& s) const
{
  Vec u = impl_->gather(s);
  Vec bu = impl_->B * u;
  Vec scale = impl_->absB * u.cwiseAbs();
  double den = scale.norm();
  return den > 0.0 ? bu.norm() / den : 0.0;
}

double AxisymmetricSolver::l2_error(const SolverState& s, const ReferenceField& ref) const
{
  const Impl& m = *impl_;
  double acc = 0.0;
  for (int ei = 0; ei < grid_.nr; ++ei)
    for (int ej = 0; ej < grid_.nz; ++ej) {
      int nodes[9];
      for (int a2 = 0; a2 < 3; ++a2)
        for (int b2 = 0; b2 < 3; ++b2) nodes[a2 * 3 + b2] = m.elem_node(grid_, ei, ej, a2, b2);
      for (int qa = 0; qa < 4; ++qa)
        for (int qb = 0; qb < 4; ++qb) {
          Shape sh = m.shape(grid_, ei, ej, gq4_x[qa], gq4_x[qb]);
          double w = gq4_w[qa] * gq4_w[qb] * sh.detJ * 2.0 * M_PI * sh.r;
          double v[3] = {};
          for (int k = 0; k < 9; ++k) {
            v[0] += sh.N[k] * s.ur[nodes[k]];
            v[1] += sh.N[k] * s.uth[nodes[k]];
            v[2] += sh.N[k] * s.uz[nodes[k]];
          }
          auto rv = ref(s.t, sh.r - grid_.R, sh.z);
          for (int q = 0; q < 3; ++q) acc += w * (v[q] - rv[q]) * (v[q] - rv[q]);
        }
    }
  return std::sqrt(acc);
}

double AxisymmetricSolver::l2_norm(const ReferenceField& ref, double t) const
{
  SolverState zero;
  const Impl& m = *impl_;
  zero.t = t;
  zero.ur.assign(m.NR * m.NS, 0.0);
  zero.uth = zero.ur;
  zero.uz = zero.ur;
  return l2_error(zero, ref);
}

double AxisymmetricSolver::average_u_theta(const SolverState& s, double lo, double hi) const
{
  const Impl& m = *impl_;
  double num = 0.0, den = 0.0;
  for (int ei = 0; ei < grid_.nr; ++ei) {
    double mid = grid_.rho[2 * ei + 1];
    if (mid < lo || mid > hi) continue;
    for (int ej = 0; ej < grid_.nz; ++ej) {
      int nodes[9];
      for (int a2 = 0; a2 < 3; ++a2)
        for (int b2 = 0; b2 < 3; ++b2) nodes[a2 * 3 + b2] = m.elem_node(grid_, ei, ej, a2, b2);
      for (int qa = 0; qa < 3; ++qa)
        for (int qb = 0; qb < 3; ++qb) {
          Shape sh = m.shape(grid_, ei, ej, gq3_x[qa], gq3_x[qb]);
          double w = gq3_w[qa] * gq3_w[qb] * sh.detJ * 2.0 * M_PI * sh.r;
          double v = 0.0;
          for (int k = 0; k < 9; ++k) v += sh.N[k] * s.uth[nodes[k]];
          num += w * v;
          den += w;
        }
    }
  }
  if (den == 0.0) throw ConfigError("averaging window contains no elements");
  return num / den;
}

std::array<double, 3> AxisymmetricSolver::value_at(const SolverState& s, double rho,
                                                   double sigma) const
{
  const Impl& m = *impl_;
  double h = (grid_.rho.back() - grid_.rho.front()) / grid_.nr;
  int ei = std::clamp(int((rho - grid_.rho.front()) / h), 0, grid_.nr - 1);
  double xi = 2.0 * (rho - grid_.rho[2 * ei]) / h - 1.0;
  int ej = std::clamp(int(grid_.xi_of(sigma) * grid_.nz), 0, grid_.nz - 1);
  // sigma is quadratic in eta inside the element
  double s0 = grid_.sigma[2 * ej], s1 = grid_.sigma[2 * ej + 1], s2 = grid_.sigma[2 * ej + 2];
  double eta = 0.0;
  for (int it = 0; it < 50; ++it) {
    double n[3], d[3];
    q2_1d(eta, n, d);
    double f = n[0] * s0 + n[1] * s1 + n[2] * s2 - sigma;
    double fp = d[0] * s0 + d[1] * s1 + d[2] * s2;
    double step = f / fp;
    eta -= step;
    if (std::abs(step) < 1e-15) break;
  }
  double nx[3], dx[3], ny[3], dy[3];
  q2_1d(xi, nx, dx);
  q2_1d(eta, ny, dy);
  std::array<double, 3> v{};
  for (int a2 = 0; a2 < 3; ++a2)
    for (int b2 = 0; b2 < 3; ++b2) {
      int n = m.elem_node(grid_, ei, ej, a2, b2);
      double w = nx[a2] * ny[b2];
      v[0] += w * s.ur[n];
      v[1] += w * s.uth[n];
      v[2] += w * s.uz[n];
    }
  return v;
}

void rotate_horizontal(std::vector<double>& ur, std::vector<double>& uth, double theta)
{
  const double c = std::cos(theta), s = std::sin(theta);
  for (std::size_t i = 0; i < ur.size(); ++i) {
    double a = ur[i], b = uth[i];
    ur[i] = c * a + s * b;
    uth[i] = -s * a + c * b;
  }
}

RunResult run_solver(const AxisymmetricSolver& solver, const Topography& topo,
                     const InitialSwirl& data, const AnsatzParams* P, const RunOptions& o)
{
  const DepthProfile& dp = topo.depth();
  const double R = topo.shore().R();
  auto u0 = [&](double rho, double) { return data.u0(rho, dp); };
  ReferenceField limit = [&](double t, double rho, double) {
    double lam = topo.lambda_of(dp.phi(rho), dp.dphi(rho));
    return std::array<double, 3>{0.0, std::exp(-lam * t) * data.u0(rho, dp), 0.0};
  };
  ReferenceField ansatz = [&](double t, double rho, double z) {
    // the isoparametric bottom interpolates phi; stay inside the true column
    z = std::clamp(z, -dp.phi(rho), 0.0);
    // on the ray y = 0 the frame (grad rho, grad_perp rho, e_z) is (e_r, e_theta, e_z)
    AnsatzTerms<double> A = evaluate_terms<double>(*P, t, R + rho, 0.0, z);
    FrameVector<double> v = assemble_frame(*P, A, TermMask::full());
    return std::array<double, 3>{v.r, v.th, v.z};
  };
  RunResult res;
  SolverState s = solver.init(u0);
  res.u0_norm = solver.l2_norm(limit, 0.0);
  const double e0 = solver.energy(s);
  const std::size_t n_steps = std::size_t(std::ceil(solver.tmax() / solver.dt() - 1e-9));
  const std::size_t every = std::max<std::size_t>(1, n_steps / 40);
  double dissipated = 0.0;
  auto probe = [&](const SolverState& st) {
    if (o.plateau_hi > o.plateau_lo) return solver.average_u_theta(st, o.plateau_lo, o.plateau_hi);
    return solver.value_at(st, o.probe_rho, -0.5)[1];
  };
  auto record = [&](const SolverState& st) {
    res.rows.push_back({st.t, solver.l2_error(st, limit) / res.u0_norm,
                        P ? solver.l2_error(st, ansatz) / res.u0_norm : std::nan(""), solver.energy(st), dissipated});
    res.probe_t.push_back(st.t);
    res.probe_value.push_back(probe(st));
    if (o.keep_snapshots) res.snapshots.push_back(st);
  };
  record(s);
  for (std::size_t n = 1; n <= n_steps; ++n) {
    StepDiagnostics d = solver.step(s);
    dissipated += solver.dt() * d.dissipation;
    res.max_energy_defect = std::max(res.max_energy_defect, d.energy_defect / e0);
    res.max_divergence = std::max(res.max_divergence, d.divergence);
    if (n % every == 0 || n == n_steps) record(s);
  }
  res.steps = n_steps;
  return res;
}

void write_snapshot(const std::string& dir, int index, const AxisymmetricSolver& solver,
                    const SolverState& s)
{
  char name[32];
  std::snprintf(name, sizeof name, "/snap_%05d", index);
  const std::string stem = dir + name;
  const Grid2D& g = solver.grid();
  nlohmann::json h;
  h["time"] = s.t;
  h["eps"] = solver.eps();
  h["shape"] = {g.n_rho(), g.n_sigma()};
  h["pressure_shape"] = {g.nr + 1, g.nz + 1};
  h["fields"] = {"u_r", "u_theta", "u_z", "p"};
  h["dtype"] = "float64 little-endian, row-major (rho, sigma)";
  h["rho"] = g.rho;
  h["sigma"] = g.sigma;
  h["R"] = g.R;
  std::ofstream(stem + ".json") << h.dump(1) << "\n";
  std::ofstream bin(stem + ".bin", std::ios::binary);
  for (const auto* f : {&s.ur, &s.uth, &s.uz, &s.p})
    bin.write(reinterpret_cast<const char*>(f->data()), std::streamsize(f->size() * sizeof(double)));
}

}  // namespace ekman
