#pragma once
#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "ekman/geometry.hpp"
#include "ekman/profiles.hpp"

namespace ekman {

struct SolverSettings {
  int nr = 96;           // radial Q2 elements
  int nz = 40;           // vertical Q2 elements
  double dt = 0.0;       // 0 -> 0.1 eps
  double tmax = 0.0;     // 0 -> 2 / lambda_flat
  bool nonlinear = false;
  double rout = 0.0;     // outer wall distance from the shore; 0 -> inner wall + 6
  double rho_min = 0.0;  // inner wall; 0 -> phi(rho_min) = wall_factor eps^{1-a}
  double wall_factor = 2.0;
  double stretch = 2.2;  // tanh clustering of sigma levels at both ends
  int snapshots = 40;    // number of recorded times besides t = 0
  bool coriolis = true;
};

// Axisymmetric grid in (rho, sigma) with z = sigma phi(rho); Q2 nodes.
struct Grid2D {
  double R;
  std::vector<double> rho;    // 2 nr + 1 nodes
  std::vector<double> sigma;  // 2 nz + 1 nodes, -1 .. 0
  std::vector<double> phi;    // phi at rho nodes
  int nr, nz;
  double stretch;

  int n_rho() const { return int(rho.size()); }
  int n_sigma() const { return int(sigma.size()); }
  int node(int i, int j) const { return i * n_sigma() + j; }
  double r(int i) const { return R + rho[i]; }
  double z(int i, int j) const { return sigma[j] * phi[i]; }
  // smallest vertical node spacing next to the surface or the bottom
  double min_boundary_dz() const;
  double sigma_of(double xi) const;  // xi in [0, 1]
  double xi_of(double sigma) const;
};

Grid2D make_grid(const DepthProfile& depth, double R, double rho_min, double rho_max, int nr,
                 int nz, double stretch);

struct SolverState {
  double t = 0.0;
  // nodal values on the full Q2 grid (boundary nodes included, zero there)
  std::vector<double> ur, uth, uz;
  std::vector<double> p;  // Q1 corner nodes, (nr + 1) x (nz + 1)
};

struct StepDiagnostics {
  double energy;       // 1/2 |u|^2
  double dissipation;  // eps beta |grad u|^2 at the new time
  double divergence;   // |B u| relative to |u|
  double energy_defect;  // E_new + dt D - E_old, relative to E(0)
};

// sampled reference field: (u_r, u_theta, u_z) at (t, rho, z)
using ReferenceField = std::function<std::array<double, 3>(double t, double rho, double z)>;

class AxisymmetricSolver {
 public:
  AxisymmetricSolver(const Topography& topo, double eps, double a, const SolverSettings& s);
  ~AxisymmetricSolver();

  const Grid2D& grid() const { return grid_; }
  double eps() const { return eps_; }
  double dt() const { return dt_; }
  double tmax() const { return tmax_; }
  double nu() const { return nu_; }
  std::size_t n_unknowns() const;

  // u_theta = f(rho, z); u_r = u_z = 0; no-slip nodes zero
  SolverState init(const std::function<double(double rho, double z)>& u_theta) const;
  StepDiagnostics step(SolverState& s) const;

  double energy(const SolverState& s) const;
  double dissipation_rate(const SolverState& s) const;
  double divergence_norm(const SolverState& s) const;

  // L2 norm of u - ref over the computational domain (includes 2 pi r)
  double l2_error(const SolverState& s, const ReferenceField& ref) const;
  double l2_norm(const ReferenceField& ref, double t) const;
  // volume average of u_theta over rho in [lo, hi]
  double average_u_theta(const SolverState& s, double lo, double hi) const;
  std::array<double, 3> value_at(const SolverState& s, double rho, double sigma) const;

 private:
  struct Impl;
  const Topography& topo_;
  double eps_, a_, nu_, dt_, tmax_;
  SolverSettings set_;
  Grid2D grid_;
  std::unique_ptr<Impl> impl_;
};

// Exact rotation of (u_r, u_theta) by angle theta; kept as an isometric
// building block for split schemes.
void rotate_horizontal(std::vector<double>& ur, std::vector<double>& uth, double theta);

struct TrajectoryRow {
  double t, err_vs_limit, err_vs_ansatz, energy, dissipation;
};

struct RunResult {
  std::vector<TrajectoryRow> rows;
  std::vector<SolverState> snapshots;
  double u0_norm = 0.0;
  double max_energy_defect = 0.0;  // relative
  double max_divergence = 0.0;
  std::size_t steps = 0;
  std::vector<double> probe_t, probe_value;  // decay diagnostic
};

struct RunOptions {
  // decay diagnostic: plateau average if plateau_lo < plateau_hi, else the
  // value of u_theta at (probe_rho, sigma = -1/2)
  double plateau_lo = 0.0, plateau_hi = 0.0;
  double probe_rho = 0.0;
  bool keep_snapshots = false;
};

// P may be null when the ansatz is not defined for the configuration; the
// ansatz error column is then NaN.
RunResult run_solver(const AxisymmetricSolver& solver, const Topography& topo,
                     const InitialSwirl& data, const AnsatzParams* P, const RunOptions& o);

void write_snapshot(const std::string& dir, int index, const AxisymmetricSolver& solver,
                    const SolverState& s);

}  // namespace ekman
