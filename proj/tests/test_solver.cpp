#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <filesystem>

#include "ekman/errors.hpp"
#include "ekman/solver.hpp"

using namespace ekman;

namespace {
Topography default_topo()
{
  return Topography(ConvexShore::disk(1.0), DepthProfile(DepthProfile::Family::exponential, 0.5, 2.0, 1.0), 0.125);
}
SolverSettings coarse()
{
  SolverSettings s;
  s.nr = 24;
  s.nz = 12;
  s.tmax = 1.0;
  s.rout = 6.5;
  return s;
}
}  // namespace

TEST_CASE("initial energy matches an independent integral")
{
  Topography topo = default_topo();
  InitialSwirl d(InitialSwirl::Family::gaussian, 1.0, 3.5, 0.75);
  AxisymmetricSolver S(topo, 0.2, 0.75, coarse());
  SolverState st = S.init([&](double rho, double) { return d.u0(rho, topo.depth()); });
  const Grid2D& g = S.grid();
  auto f = [&](double r) {
    double u = d.u0(r, topo.depth());
    return 0.5 * u * u * 2.0 * M_PI * (1.0 + r) * topo.depth().phi(r);
  };
  double oracle =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, g.rho.front(), g.rho.back(), 10, 1e-13);
  CHECK(S.energy(st) == doctest::Approx(oracle).epsilon(5e-3));
}

TEST_CASE("horizontal rotation is an isometry")
{
  std::vector<double> ur{1.0, 0.3, -2.0}, uth{0.0, 0.4, 1.5};
  auto n2 = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < ur.size(); ++i) s += ur[i] * ur[i] + uth[i] * uth[i];
    return s;
  };
  double before = n2();
  rotate_horizontal(ur, uth, 0.731);
  CHECK(n2() == doctest::Approx(before).epsilon(1e-15));
  std::vector<double> a{1.0}, b{0.0};
  rotate_horizontal(a, b, M_PI / 2);
  CHECK(std::abs(a[0]) < 1e-15);
  CHECK(std::abs(b[0]) == doctest::Approx(1.0));
}

TEST_CASE("implicit steps satisfy the discrete energy inequality")
{
  Topography topo = default_topo();
  InitialSwirl d(InitialSwirl::Family::gaussian, 1.0, 3.5, 0.75);
  for (bool cor : {true, false}) {
    SolverSettings s = coarse();
    s.coriolis = cor;
    AxisymmetricSolver S(topo, 0.2, 0.75, s);
    SolverState st = S.init([&](double rho, double) { return d.u0(rho, topo.depth()); });
    double e = S.energy(st);
    for (int k = 0; k < 10; ++k) {
      StepDiagnostics dg = S.step(st);
      CHECK(dg.energy_defect <= 1e-10);
      CHECK(dg.energy < e);
      CHECK(dg.divergence <= 1e-10);
      e = dg.energy;
    }
  }
}

TEST_CASE("rotation speeds up the spin-down compared to pure diffusion")
{
  Topography topo = default_topo();
  InitialSwirl d(InitialSwirl::Family::gaussian, 1.0, 3.5, 0.75);
  double e_end[2];
  for (int cor = 0; cor < 2; ++cor) {
    SolverSettings s = coarse();
    s.coriolis = cor == 1;
    AxisymmetricSolver S(topo, 0.2, 0.75, s);
    SolverState st = S.init([&](double rho, double) { return d.u0(rho, topo.depth()); });
    double e0 = S.energy(st);
    for (int k = 0; k < 20; ++k) S.step(st);
    e_end[cor] = S.energy(st) / e0;
  }
  // viscous diffusion alone acts on the O(1) scale of the data; with
  // rotation the thin layers pump the interior down at rate sqrt(2 beta)/phi
  CHECK(e_end[1] < e_end[0]);
}

TEST_CASE("grid refinement changes the error against the limit only slightly")
{
  Topography topo = default_topo();
  InitialSwirl d(InitialSwirl::Family::gaussian, 1.0, 3.5, 0.75);
  double err[2];
  for (int k = 0; k < 2; ++k) {
    SolverSettings s = coarse();
    s.nr *= (k + 1);
    s.nz *= (k + 1);
    s.tmax = 2.0;
    AxisymmetricSolver S(topo, 0.2, 0.75, s);
    RunResult r = run_solver(S, topo, d, nullptr, RunOptions{});
    err[k] = r.rows.back().err_vs_limit;
    CHECK(std::isnan(r.rows.back().err_vs_ansatz));
  }
  CHECK(std::abs(err[1] - err[0]) <= 0.1 * err[1]);
}

TEST_CASE("under-resolved boundary layer is rejected with a hint")
{
  Topography topo = default_topo();
  SolverSettings s = coarse();
  s.nz = 3;
  try {
    AxisymmetricSolver S(topo, 0.05, 0.75, s);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("solver.nz >=") != std::string::npos);
  }
}

TEST_CASE("snapshots carry a header and the raw fields")
{
  Topography topo = default_topo();
  AxisymmetricSolver S(topo, 0.2, 0.75, coarse());
  SolverState st = S.init([](double, double) { return 0.0; });
  auto dir = std::filesystem::temp_directory_path() / "ekman_snap_test" / std::string(80, 'd');
  std::filesystem::create_directories(dir);
  write_snapshot(dir.string(), 3, S, st);
  auto bin = dir / "snap_00003.bin";
  REQUIRE(std::filesystem::exists(dir / "snap_00003.json"));
  std::size_t n = 3 * st.ur.size() + st.p.size();
  CHECK(std::filesystem::file_size(bin) == n * sizeof(double));
  std::filesystem::remove_all(dir.parent_path());
}
