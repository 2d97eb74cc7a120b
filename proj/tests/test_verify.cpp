#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "ekman/verify.hpp"

using namespace ekman;

namespace {
Topography default_topo()
{
  return Topography(ConvexShore::disk(1.0), DepthProfile(DepthProfile::Family::exponential, 0.5, 2.0, 1.0), 0.125);
}
InitialSwirl gaussian() { return InitialSwirl(InitialSwirl::Family::gaussian, 1.0, 3.5, 0.75); }
}  // namespace

TEST_CASE("log-log fit recovers a power law")
{
  std::vector<double> x{0.2, 0.1, 0.05, 0.025}, y;
  for (double e : x) y.push_back(3.0 * std::pow(e, 0.37));
  SlopeFit f = fit_loglog(x, y);
  CHECK(f.slope == doctest::Approx(0.37).epsilon(1e-13));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-13));
  CHECK(f.stderr_ < 1e-12);
}

TEST_CASE("log-log fit agrees with a dense least-squares solve")
{
  std::vector<double> x{0.2, 0.1, 0.05, 0.025, 0.0125}, y{1.9, 1.41, 0.93, 0.71, 0.48};
  Eigen::MatrixXd A(5, 2);
  Eigen::VectorXd b(5);
  for (int i = 0; i < 5; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = std::log(x[i]);
    b(i) = std::log(y[i]);
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  Eigen::VectorXd r = A * c - b;
  double s2 = r.squaredNorm() / 3.0;
  double se = std::sqrt(s2 * (A.transpose() * A).inverse()(1, 1));
  SlopeFit f = fit_loglog(x, y);
  CHECK(f.slope == doctest::Approx(c(1)).epsilon(1e-12));
  CHECK(f.stderr_ == doctest::Approx(se).epsilon(1e-10));
}

TEST_CASE("study CSV round-trips exactly")
{
  StudyTable t;
  t.rows = {{0.2, 1.0 / 3.0, 0.1, {}}, {0.1, std::exp(-1.0), 1e-17, {}}, {0.05, 2.0 / 7.0, 0.0, {}}};
  t.refit();
  StudyTable u = StudyTable::from_csv(t.to_csv());
  REQUIRE(u.rows.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(u.rows[i].eps == t.rows[i].eps);
    CHECK(u.rows[i].value == t.rows[i].value);
    CHECK(u.rows[i].stderr_ == t.rows[i].stderr_);
  }
  CHECK(u.fit.slope == t.fit.slope);
  CHECK(u.to_csv() == t.to_csv());
  CHECK_THROWS(StudyTable::from_csv("eps,v\n0.1,1\n"));
}

TEST_CASE("exactness checks pass and negative controls fail")
{
  AnsatzParams P(default_topo(), 0.1, 0.75, gaussian());
  CHECK(check_boundary(P, 300, 1).pass);
  CHECK(check_divergence(P, 300, 2).pass);
  AnsatzParams S(default_topo(), 0.1, 0.75, gaussian(), Mutation::sign_flip);
  CHECK_FALSE(check_boundary(S, 300, 1).pass);
  AnsatzParams C(default_topo(), 0.1, 0.75, gaussian(), Mutation::cutoff_variable);
  CHECK_FALSE(check_divergence(C, 300, 2).pass);
}

TEST_CASE("identity checks")
{
  Topography topo = default_topo();
  CHECK(check_frame_identities(topo.shore(), 50, 3).pass);
  CHECK(check_gradient_unit(topo.shore(), 50, 4).pass);
  CHECK(check_euler_identity(topo.shore(), 50, 5).pass);
  CHECK(check_cutoff_moments().pass);
  CHECK(check_coefficients().pass);
  CHECK(check_advection_identity(topo, 0.1, 5, 50, 6).pass);
  CHECK(check_curl_inequality(topo, 5, 7).pass);
}

TEST_CASE("fitted decay rate of an exponential")
{
  std::vector<double> t, v;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(0.1 * i);
    v.push_back(2.0 * std::exp(-0.3 * t.back()) + (i < 10 ? 0.5 : 0.0));
  }
  CHECK(fitted_decay_rate(t, v, 2.0) == doctest::Approx(0.3).epsilon(1e-10));
}
