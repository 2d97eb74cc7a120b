#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ekman/calculus.hpp"
#include "ekman/profiles.hpp"

namespace ekman {

using json = nlohmann::json;

struct CheckReport {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured quantity
  double threshold = 0.0;  // acceptance bound on it
  json detail = json::object();
};

struct SlopeFit {
  double slope = 0.0;
  double stderr_ = 0.0;
  double intercept = 0.0;
};

// least squares of log(y) against log(x)
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct StudyRow {
  double eps;
  double value;
  double stderr_;  // reported uncertainty: time-tail bound, or 0
  json meta = json::object();
};

struct StudyTable {
  std::string name;
  std::string variant;
  std::vector<StudyRow> rows;
  SlopeFit fit;
  std::string digest;
  json meta = json::object();

  void refit();
  std::string to_csv() const;
  static StudyTable from_csv(const std::string& text);
  json to_json() const;
};

// Everything a study needs besides epsilon.
struct StudySetup {
  Topography topo;
  InitialSwirl data;
  double a = 0.75;
  std::vector<double> eps;
  QuadSettings quad;
  int n_t = 24;
  std::string digest;

  AnsatzParams params(double eps, Mutation m = Mutation::none) const
  {
    return AnsatzParams(topo, eps, a, data, m);
  }
  double t_star() const { return quad.t_star_factor / topo.lambda_flat(); }
};

CheckReport check_boundary(const AnsatzParams& P, int n_points, std::uint64_t seed);
CheckReport check_divergence(const AnsatzParams& P, int n_points, std::uint64_t seed);
CheckReport check_frame_identities(const ConvexShore& shore, int n_points, std::uint64_t seed);
CheckReport check_euler_identity(const ConvexShore& shore, int n_points, std::uint64_t seed);
CheckReport check_gradient_unit(const ConvexShore& shore, int n_points, std::uint64_t seed);
CheckReport check_cutoff_moments();
CheckReport check_coefficients();
CheckReport check_advection_identity(const Topography& topo, double eps, int n_profiles, int n_points,
                             std::uint64_t seed);
CheckReport check_growth_exponents(const Topography& topo, double a, std::uint64_t seed);
CheckReport check_curl_inequality(const Topography& topo, int n_pairs, std::uint64_t seed);

// variants: "full", "interior_only"
StudyTable study_ansatz_convergence(const StudySetup& s, const std::string& variant = "full");
// variants: "full"
StudyTable study_residual(const StudySetup& s, const std::string& variant = "full");
// variants: "full", "surface_self"
StudyTable study_nonlinear(const StudySetup& s, const std::string& variant = "full");

struct GradientBudget {
  StudyTable table;
  CheckReport report;
};
GradientBudget check_gradient_budget(const StudySetup& s);

// decay rate of t -> value(t) fitted over the last part of a grid
double fitted_decay_rate(const std::vector<double>& t, const std::vector<double>& v,
                         double t_from);

}  // namespace ekman
