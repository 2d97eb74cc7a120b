#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ekman/calculus.hpp"
#include "ekman/geometry.hpp"
#include "ekman/profiles.hpp"
#include "ekman/solver.hpp"

namespace ekman {

// Flat `section.key = value` text. '#' starts a comment; lists are
// comma-separated; booleans are true/false.
class ConfigText {
 public:
  static ConfigText parse(const std::string& text, const std::string& origin = "<config>");
  static ConfigText load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }
  int line_of(const std::string& key) const;
  std::string origin() const { return origin_; }

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
  std::string origin_;
};

// FNV-1a 64 over "key=value\n" lines in key order, as 16 hex digits
std::string fnv1a_digest(const std::map<std::string, std::string>& kv);

struct RunConfig {
  std::uint64_t seed = 20240611;
  std::string output_dir = "results";

  double beta = 0.125;
  double a = 0.75;

  std::string shore = "disk";
  double R = 1.0;
  std::vector<double> shore_a, shore_b;

  std::string depth_profile = "exponential";
  double rho0 = 0.5, H = 2.0, ell = 1.0;

  std::string data_family = "gaussian";
  double amplitude = 1.0, center = 3.5, width = 0.75;

  std::vector<double> study_eps{0.2, 0.1, 0.05, 0.025};
  int t_grid = 24;
  int n_sample_points = 2000;
  double t_star_factor = 8.0;
  double nonlinear_a = 0.85;

  QuadSettings quad;

  std::vector<double> verify_eps{0.1, 0.05};
  std::string mutation = "none";
  int n_profiles = 100;
  int n_points_per_profile = 1000;
  int n_pairs = 100;

  double solver_eps = 0.05;
  std::vector<double> compare_eps{0.2, 0.1, 0.05};
  SolverSettings solver;
  std::string decay = "local";  // plateau | local | none
  double probe_rho = 0.0;       // 0 -> data.center

  // every key with its resolved value, defaults included; output.dir is
  // left out so results do not depend on where they are written
  std::map<std::string, std::string> resolved;
  std::string digest;

  static RunConfig from_text(const ConfigText& c);

  Topography topography() const;
  InitialSwirl data() const;
  Mutation mutation_kind() const;
  double probe() const { return probe_rho > 0.0 ? probe_rho : center; }
  void override_seed(std::uint64_t s)
  {
    seed = s;
    resolved["seed"] = std::to_string(s);
    digest = fnv1a_digest(resolved);
  }
};

}  // namespace ekman
