#pragma once
#include <vector>

namespace ekman {

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

// Gauss-Legendre rule with n nodes, 1 <= n <= 128; cached.
const GaussRule& gauss_legendre(int n);

struct Nodes1D {
  std::vector<double> x, w;
  void append_panel(double a, double b, int n);
  double sum() const;
};

// composite rule: n nodes on every panel between consecutive breakpoints
Nodes1D composite_gauss(const std::vector<double>& breaks, int n);

}  // namespace ekman
