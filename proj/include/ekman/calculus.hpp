#pragma once
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ekman/jet.hpp"
#include "ekman/profiles.hpp"
#include "ekman/quadrature.hpp"

namespace ekman {

using Vec3 = std::array<double, 3>;

// Cartesian components as jets in (x, y, z, t).
struct FrameJet {
  std::array<Jet, 3> c;
  Vec3 value() const { return {c[0].v, c[1].v, c[2].v}; }
  double d(int comp, int axis) const { return c[comp].d[axis]; }
  double lap(int comp) const { return c[comp].lap(); }
  double dt(int comp) const { return c[comp].d[AT]; }
};

enum class TermId {
  U0_int, U0_surf, U0_bot, Ua_surf, Ua_bot, U1_int, U1_surf, U1_bot, U2_surf, U2_bot,
  limit, app
};
TermId term_from_name(const std::string& name);

AnsatzTerms<Jet> terms_jet(const AnsatzParams& P, double t, const Vec3& x);
FrameJet to_jet(const ShoreFrame<Jet>& f, const FrameVector<Jet>& v);
FrameJet jet_of(TermId id, double t, const Vec3& x, const AnsatzParams& P);
FrameJet app_jet(const AnsatzParams& P, const AnsatzTerms<Jet>& A, const TermMask& m);

double divergence(const FrameJet& j);
Vec3 laplacian(const FrameJet& j);
Vec3 time_derivative(const FrameJet& j);
Vec3 coriolis(const Vec3& v);  // e_z ^ v
Vec3 advect(const FrameJet& j);  // (U . grad) U

// E = dU/dt - eps beta Lap U + (1/eps) e_z^U + (1/eps) grad P for the
// selected terms. The pressure P0_int enters when U0_int is selected,
// eps P1_bot when U0_bot is selected.
Vec3 stokes_coriolis_residual(const AnsatzParams& P, double t, const Vec3& x,
                              const TermMask& m = TermMask::full());
Vec3 residual_from_terms(const AnsatzParams& P, const AnsatzTerms<Jet>& A, const TermMask& m);

// U.grad U + (ubar)^2 Lap(rho) grad rho
Vec3 nonlinear_structure_error(const AnsatzParams& P, double t, const Vec3& x,
                               const TermMask& m = TermMask::full(), bool with_limit = true);

struct QuadSettings {
  int n_rho = 8;         // Gauss nodes per radial panel
  int n_z_interior = 16;  // Gauss nodes per interior vertical panel
  int n_z_layer = 10;     // Gauss nodes per layer sub-panel
  int n_theta = 1;        // trapezoid nodes along the shore (disk: 1 suffices)
  double t_star_factor = 8.0;
  double layer_M = 40.0;
};

struct QuadColumn {
  double x, y, rho, phi, weight;  // weight: horizontal area element
  Nodes1D z;
};

struct Quadrature {
  std::vector<QuadColumn> columns;
  std::size_t n_points() const;
};

Quadrature build_quadrature(const AnsatzParams& P, const QuadSettings& s);
// same construction with explicit layer thicknesses (no ansatz needed)
Quadrature build_quadrature(const Topography& topo, double rho_lo, double rho_hi,
                            double sqrtE, double L, const std::vector<double>& extra_breaks,
                            const QuadSettings& s);

using FieldSampler = std::function<Vec3(double x, double y, double z, double rho)>;
using ScalarSampler = std::function<double(double x, double y, double z, double rho)>;

double integrate(const Quadrature& q, const ScalarSampler& f);
double norm_L2(const Quadrature& q, const FieldSampler& f);
double norm_LinfH_L2V(const Quadrature& q, const FieldSampler& f);
// sup over columns of (int d_phi |F|^2 dz)^{1/2}
double norm_weighted_dphi(const Quadrature& q, const FieldSampler& f);
double norm_Linf(const Quadrature& q, const ScalarSampler& f);

std::vector<double> geometric_time_grid(double t_star, int n = 24);

struct TimeIntegral {
  double value;  // trapezoid over the grid on [0, T*]
  double tail;   // norm(T*) / lambda
};
TimeIntegral time_L1(const std::vector<double>& t, const std::vector<double>& norms,
                     double lambda);

// thread count for the column loops; results do not depend on it
void set_threads(int n);
int threads();
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ekman
