#include "ekman/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>

#include "ekman/errors.hpp"
#include "ekman/report.hpp"
#include "ekman/verify.hpp"

namespace fs = std::filesystem;

namespace ekman {

const char* const tool_version = "ekman 1.0.0";

namespace {

std::ostream& out_of(const CommandContext& c) { return c.log ? *c.log : std::cout; }

std::string g17(double v)
{
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json load_json(const std::string& path)
{
  if (!fs::exists(path)) return json::object();
  return json::parse(read_text_file(path));
}

void merge_json(const std::string& path, const std::string& key, const json& value)
{
  json j = load_json(path);
  j[key] = value;
  write_text_file(path, j.dump(2) + "\n");
}

// manifest holds only reproducible content; wall-clock goes to timing.json
void record(const CommandContext& c, const std::string& key, const json& result, double seconds)
{
  json m = load_json(c.out + "/manifest.json");
  m["tool_version"] = tool_version;
  m["digest"] = c.cfg.digest;
  m["config"] = c.cfg.resolved;
  m["results"][key] = result;
  write_text_file(c.out + "/manifest.json", m.dump(2) + "\n");
  merge_json(c.out + "/timing.json", key, {{"wall_clock_seconds", seconds}});
}

json report_json(const CheckReport& r)
{
  return {{"name", r.name}, {"pass", r.pass}, {"value", r.value}, {"threshold", r.threshold}, {"detail", r.detail}};
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

StudySetup setup_of(const RunConfig& cfg)
{
  return StudySetup{cfg.topography(), cfg.data(), cfg.a, cfg.study_eps, cfg.quad, cfg.t_grid, cfg.digest};
}

SolverSettings solver_settings(const RunConfig& cfg)
{
  SolverSettings s = cfg.solver;
  if (s.rout <= 0.0) s.rout = cfg.center + 4.0 * cfg.width;
  return s;
}

std::string trajectory_csv(const RunResult& r)
{
  std::string s = "t,err_vs_limit,err_vs_ansatz,energy,dissipation\n";
  for (const auto& row : r.rows)
    s += g17(row.t) + "," + g17(row.err_vs_limit) + "," + g17(row.err_vs_ansatz) + "," + g17(row.energy) +
         "," + g17(row.dissipation) + "\n";
  return s;
}

}  // namespace

int cmd_verify(const CommandContext& c)
{
  auto t0 = std::chrono::steady_clock::now();
  const RunConfig& cfg = c.cfg;
  Topography topo = cfg.topography();
  InitialSwirl data = cfg.data();
  std::vector<CheckReport> reps;
  std::uint64_t seed = cfg.seed;
  for (std::size_t i = 0; i < cfg.verify_eps.size(); ++i) {
    AnsatzParams P(topo, cfg.verify_eps[i], cfg.a, data, cfg.mutation_kind());
    char tag[64];
    std::snprintf(tag, sizeof tag, "[eps=%g]", cfg.verify_eps[i]);
    reps.push_back(check_boundary(P, cfg.n_sample_points, seed + 10 * i + 1));
    reps.back().name += tag;
    reps.push_back(check_divergence(P, cfg.n_sample_points, seed + 10 * i + 2));
    reps.back().name += tag;
  }
  reps.push_back(check_frame_identities(topo.shore(), 500, seed + 101));
  reps.push_back(check_gradient_unit(topo.shore(), 500, seed + 102));
  reps.push_back(check_euler_identity(topo.shore(), 500, seed + 103));
  if (topo.shore().kind() == ConvexShore::Kind::disk) {
    // exercise the general projection path as well
    ConvexShore curve = ConvexShore::curve(cfg.R, {0.05 * cfg.R}, {0.02 * cfg.R});
    reps.push_back(check_frame_identities(curve, 500, seed + 104));
    reps.back().name += "[curve]";
    reps.push_back(check_gradient_unit(curve, 500, seed + 105));
    reps.back().name += "[curve]";
  }
  reps.push_back(check_cutoff_moments());
  reps.push_back(check_coefficients());
  reps.push_back(check_advection_identity(topo, cfg.verify_eps.front(), cfg.n_profiles, cfg.n_points_per_profile, seed + 201));
  reps.push_back(check_growth_exponents(topo, cfg.a, seed + 202));
  reps.push_back(check_curl_inequality(topo, cfg.n_pairs, seed + 203));

  bool pass = true;
  json checks = json::array(), flags = json::object();
  for (const auto& r : reps) {
    pass = pass && r.pass;
    checks.push_back(report_json(r));
    flags[r.name] = r.pass;
    out_of(c) << (r.pass ? "pass " : "FAIL ") << r.name << "  value " << g17(r.value) << "  threshold "
              << g17(r.threshold) << "\n";
  }
  json doc = {{"digest", cfg.digest}, {"seed", cfg.seed},       {"verify_eps", cfg.verify_eps},
              {"mutation", cfg.mutation}, {"pass", pass}, {"checks", checks}};
  fs::create_directories(c.out);
  write_text_file(c.out + "/verify.json", doc.dump(2) + "\n");
  record(c, "verify", {{"pass", pass}, {"checks", flags}}, seconds_since(t0));
  return pass ? exit_pass : exit_fail;
}

int cmd_study(const CommandContext& c, const std::string& which)
{
  auto t0 = std::chrono::steady_clock::now();
  const RunConfig& cfg = c.cfg;
  StudySetup s = setup_of(cfg);
  fs::create_directories(c.out);
  json summary;
  bool pass = false;
  auto save = [&](const StudyTable& t, const std::string& file) {
    write_text_file(c.out + "/" + file, t.to_csv());
    summary["tables"][file] = t.to_json();
  };
  auto slope_entry = [](const StudyTable& t) {
    return json{{"slope", t.fit.slope}, {"slope_stderr", t.fit.stderr_}};
  };
  if (which == "convergence") {
    StudyTable full = study_ansatz_convergence(s, "full");
    StudyTable inner = study_ansatz_convergence(s, "interior_only");
    save(full, "study_convergence.csv");
    save(inner, "study_convergence_interior_only.csv");
    double need_inner = (1.0 - cfg.a) / 2.0 - 0.05;
    bool p1 = full.fit.slope >= 0.1, p2 = inner.fit.slope >= need_inner;
    pass = p1 && p2;
    summary["slope"] = full.fit.slope;
    summary["slope_stderr"] = full.fit.stderr_;
    summary["criteria"] = {{"full_slope_min", 0.1}, {"full_pass", p1},
                           {"interior_only_slope", inner.fit.slope},
                           {"interior_only_slope_stderr", inner.fit.stderr_},
                           {"interior_only_slope_min", need_inner}, {"interior_only_pass", p2}};
  } else if (which == "residual") {
    StudyTable t = study_residual(s, "full");
    save(t, "study_residual.csv");
    pass = t.fit.slope >= 0.2 && t.fit.slope - 2.0 * t.fit.stderr_ > 0.0;
    summary.update(slope_entry(t));
    summary["criteria"] = {{"slope_min", 0.2}, {"slope_minus_2stderr_positive", t.fit.slope - 2.0 * t.fit.stderr_ > 0.0}};
  } else if (which == "nonlinear") {
    s.a = cfg.nonlinear_a;
    StudyTable t = study_nonlinear(s, "full");
    StudyTable surf = study_nonlinear(s, "surface_self");
    save(t, "study_nonlinear.csv");
    save(surf, "study_nonlinear_surface_self.csv");
    double need_surf = s.a - 0.5 - 0.05;
    bool p1 = t.fit.slope - 2.0 * t.fit.stderr_ > 0.0, p2 = surf.fit.slope >= need_surf;
    pass = p1 && p2;
    summary.update(slope_entry(t));
    summary["a"] = s.a;
    summary["criteria"] = {{"slope_minus_2stderr_positive", p1}, {"surface_self_slope", surf.fit.slope},
                           {"surface_self_slope_min", need_surf}, {"surface_self_pass", p2}};
  } else if (which == "gradient") {
    GradientBudget g = check_gradient_budget(s);
    StudySetup sc = s;
    sc.data = InitialSwirl(InitialSwirl::Family::shore_constant, cfg.amplitude, cfg.center, cfg.width);
    GradientBudget ctl = check_gradient_budget(sc);
    save(g.table, "study_gradient.csv");
    save(ctl.table, "study_gradient_control.csv");
    const auto& rows = ctl.table.rows;
    double growth = rows.back().value / rows.front().value;
    double need = std::pow(rows.back().eps / rows.front().eps, -(1.0 - cfg.a) / 2.0);
    bool p1 = g.report.pass, p2 = growth >= need;
    pass = p1 && p2;
    summary.update(slope_entry(g.table));
    summary["criteria"] = {{"max_over_min", g.report.value}, {"max_over_min_limit", 2.0}, {"bounded", p1},
                           {"control_family", "shore_constant"}, {"control_growth", growth},
                           {"control_growth_min", need}, {"control_grows", p2}};
  } else {
    throw ConfigError("unknown study '" + which + "' (convergence, residual, nonlinear, gradient)");
  }
  summary["pass"] = pass;
  summary["digest"] = cfg.digest;
  summary["eps"] = s.eps;
  summary["t_grid"] = geometric_time_grid(s.t_star(), s.n_t);
  merge_json(c.out + "/summary.json", which, summary);
  out_of(c) << (pass ? "pass " : "FAIL ") << "study " << which << "  slope " << g17(summary["slope"].get<double>())
            << " +/- " << g17(summary["slope_stderr"].get<double>()) << "\n";
  record(c, "study_" + which,
         {{"pass", pass}, {"slope", summary["slope"]}, {"slope_stderr", summary["slope_stderr"]}},
         seconds_since(t0));
  return pass ? exit_pass : exit_fail;
}

namespace {

struct SolveOutcome {
  RunResult run;
  json info;
  bool pass;
};

SolveOutcome solve_one(const RunConfig& cfg, double eps, const std::string& snapshot_dir = "")
{
  Topography topo = cfg.topography();
  InitialSwirl data = cfg.data();
  SolverSettings st = solver_settings(cfg);
  AxisymmetricSolver solver(topo, eps, cfg.a, st);
  std::unique_ptr<AnsatzParams> P;
  json info;
  try {
    P = std::make_unique<AnsatzParams>(topo, eps, cfg.a, data);
  } catch (const ConfigError& e) {
    info["ansatz_unavailable"] = e.what();
  }
  RunOptions o;
  o.keep_snapshots = !snapshot_dir.empty();
  if (cfg.decay == "plateau") {
    o.plateau_lo = cfg.rho0 + cfg.ell;
    o.plateau_hi = st.rout;
  } else {
    o.probe_rho = cfg.probe();
  }
  SolveOutcome out{run_solver(solver, topo, data, P.get(), o), {}, true};
  const RunResult& r = out.run;
  info["eps"] = eps;
  info["dt"] = solver.dt();
  info["tmax"] = solver.tmax();
  info["steps"] = r.steps;
  info["grid"] = {{"nr", st.nr}, {"nz", st.nz}, {"rho_min", solver.grid().rho.front()},
                  {"rho_max", solver.grid().rho.back()}, {"min_boundary_dz", solver.grid().min_boundary_dz()}};
  info["u0_norm"] = r.u0_norm;
  info["amplitude_over_beta"] = cfg.amplitude / cfg.beta;
  info["max_energy_defect"] = r.max_energy_defect;
  info["max_divergence"] = r.max_divergence;
  bool energy_ok = r.max_energy_defect <= 1e-8;
  bool div_ok = r.max_divergence <= 1e-10;
  info["energy_inequality_pass"] = energy_ok;
  info["divergence_pass"] = div_ok;
  if (cfg.depth_profile == "flat_cap")
    info["assumption_flag"] = "flat cap: phi' = 0 on a set of positive measure";
  out.pass = energy_ok && div_ok;
  if (cfg.decay != "none") {
    double rate = fitted_decay_rate(r.probe_t, r.probe_value, 0.25 * solver.tmax());
    double expected = cfg.decay == "plateau"
                          ? topo.lambda_flat()
                          : topo.lambda_phi(cfg.probe());
    double tol = cfg.decay == "plateau" ? 0.10 : 0.15;
    bool ok = std::abs(rate / expected - 1.0) <= tol;
    info["decay"] = {{"mode", cfg.decay}, {"fitted_rate", rate}, {"expected_rate", expected},
                     {"relative_error", rate / expected - 1.0}, {"tolerance", tol}, {"pass", ok},
                     {"probe_rho", cfg.probe()}, {"fit_from_t", 0.25 * solver.tmax()}};
    out.pass = out.pass && ok;
  }
  double t_init = 0.1 / topo.lambda_flat();
  double sup_lim = 0, sup_ans = 0, late_lim = 0, late_ans = 0, early_lim = 0;
  for (const auto& row : r.rows) {
    sup_lim = std::max(sup_lim, row.err_vs_limit);
    sup_ans = std::max(sup_ans, row.err_vs_ansatz);
    if (row.t > t_init) {
      late_lim = std::max(late_lim, row.err_vs_limit);
      late_ans = std::max(late_ans, row.err_vs_ansatz);
    } else {
      early_lim = std::max(early_lim, row.err_vs_limit);
    }
  }
  info["sup_err_vs_limit"] = sup_lim;
  info["sup_err_vs_ansatz"] = P ? json(sup_ans) : json(nullptr);
  info["initial_layer_t"] = t_init;
  info["initial_layer_sup_err_vs_limit"] = early_lim;
  info["late_sup_err_vs_limit"] = late_lim;
  info["late_sup_err_vs_ansatz"] = P ? json(late_ans) : json(nullptr);
  out.info = info;
  for (std::size_t i = 0; i < r.snapshots.size(); ++i) write_snapshot(snapshot_dir, int(i), solver, r.snapshots[i]);
  out.run.snapshots.clear();
  return out;
}

}  // namespace

int cmd_solve(const CommandContext& c)
{
  auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(c.out + "/trajectory");
  SolveOutcome o = solve_one(c.cfg, c.cfg.solver_eps, c.out + "/trajectory");
  write_text_file(c.out + "/solver_compare.csv", trajectory_csv(o.run));
  o.info["pass"] = o.pass;
  o.info["digest"] = c.cfg.digest;
  merge_json(c.out + "/summary.json", "solve", o.info);
  out_of(c) << (o.pass ? "pass " : "FAIL ") << "solve eps " << c.cfg.solver_eps;
  if (o.info.contains("decay"))
    out_of(c) << "  decay rate " << g17(o.info["decay"]["fitted_rate"].get<double>()) << " expected "
              << g17(o.info["decay"]["expected_rate"].get<double>());
  out_of(c) << "\n";
  record(c, "solve", {{"pass", o.pass}}, seconds_since(t0));
  return o.pass ? exit_pass : exit_fail;
}

int cmd_compare(const CommandContext& c)
{
  auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg = c.cfg;
  cfg.decay = "none";
  fs::create_directories(c.out + "/compare");
  StudyTable tab;
  tab.name = "compare";
  tab.variant = "sup_t relative L2 error vs limit";
  tab.digest = cfg.digest;
  json runs = json::array();
  bool pass = true, ansatz_better = true;
  for (double eps : cfg.compare_eps) {
    SolveOutcome o = solve_one(cfg, eps);
    char name[64];
    std::snprintf(name, sizeof name, "compare/solver_compare_eps_%g.csv", eps);
    write_text_file(c.out + "/" + name, trajectory_csv(o.run));
    tab.rows.push_back({eps, o.info["sup_err_vs_limit"].get<double>(), 0.0, o.info});
    pass = pass && o.pass;
    if (!o.info["late_sup_err_vs_ansatz"].is_null())
      ansatz_better = ansatz_better && o.info["late_sup_err_vs_ansatz"].get<double>() <
                                           o.info["late_sup_err_vs_limit"].get<double>();
    else
      ansatz_better = false;
    runs.push_back(o.info);
    out_of(c) << "  eps " << eps << "  sup err vs limit " << g17(o.info["sup_err_vs_limit"].get<double>()) << "\n";
  }
  tab.refit();
  bool monotone = true;
  for (std::size_t i = 1; i < tab.rows.size(); ++i) monotone = monotone && tab.rows[i].value < tab.rows[i - 1].value;
  bool small = tab.rows.back().value <= 0.15;
  pass = pass && monotone && small && ansatz_better;
  write_text_file(c.out + "/compare_table.csv", tab.to_csv());
  json summary = {{"pass", pass}, {"monotone", monotone}, {"final_error", tab.rows.back().value},
                  {"final_error_max", 0.15}, {"ansatz_closer_after_initial_layer", ansatz_better},
                  {"slope", tab.fit.slope}, {"slope_stderr", tab.fit.stderr_}, {"runs", runs},
                  {"digest", cfg.digest}};
  merge_json(c.out + "/summary.json", "compare", summary);
  out_of(c) << (pass ? "pass " : "FAIL ") << "compare  monotone " << monotone << "  final " << g17(tab.rows.back().value)
            << "\n";
  record(c, "compare", {{"pass", pass}, {"slope", tab.fit.slope}, {"slope_stderr", tab.fit.stderr_}},
         seconds_since(t0));
  return pass ? exit_pass : exit_fail;
}

int cmd_report(const std::string& dir, std::ostream* log)
{
  std::ostream& os = log ? *log : std::cout;
  if (!fs::is_directory(dir)) {
    os << "report: '" << dir << "' is not a directory\n";
    return exit_config;
  }
  struct Known {
    const char* file;
    const char* caption;
  };
  const Known studies[] = {
      {"study_convergence.csv", "sup over t of ||U_app(t) - u_bar(t)||_L2 against epsilon"},
      {"study_convergence_interior_only.csv", "sup over t of ||interior term - u_bar(t)||_L2 against epsilon"},
      {"study_residual.csv", "L1 in time of ||Stokes-Coriolis residual of U_app||_L2 against epsilon"},
      {"study_nonlinear.csv", "L1 in time of ||U.grad U + u_bar^2 Lap(rho) grad rho||_L2 against epsilon"},
      {"study_nonlinear_surface_self.csv", "L1 in time of surface-layer self-advection against epsilon"},
      {"study_gradient.csv", "L1 in time of ||grad(interior terms)||_Linf against epsilon"},
      {"study_gradient_control.csv", "gradient budget for shore-constant data against epsilon"},
      {"compare_table.csv", "solver: sup over t of ||u_eps - u_bar||_L2 / ||u0||_L2 against epsilon"},
  };
  int made = 0;
  for (const auto& k : studies) {
    std::string path = dir + "/" + k.file;
    if (!fs::exists(path)) continue;
    StudyTable t = StudyTable::from_csv(read_text_file(path));
    t.name = fs::path(k.file).stem().string();
    write_text_file(dir + "/" + t.name + ".svg", svg_study(t, k.caption));
    ++made;
  }
  std::vector<std::string> trajectories;
  if (fs::exists(dir + "/solver_compare.csv")) trajectories.push_back(dir + "/solver_compare.csv");
  if (fs::is_directory(dir + "/compare"))
    for (const auto& e : fs::directory_iterator(dir + "/compare"))
      if (e.path().extension() == ".csv") trajectories.push_back(e.path().string());
  std::sort(trajectories.begin(), trajectories.end());
  for (const auto& path : trajectories) {
    std::istringstream in(read_text_file(path));
    std::string line;
    std::getline(in, line);
    if (line != "t,err_vs_limit,err_vs_ansatz,energy,dissipation") continue;
    Series lim{"vs limit", {}, {}}, ans{"vs ansatz", {}, {}};
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string f[5];
      for (auto& x : f) std::getline(ls, x, ',');
      double t = std::stod(f[0]);
      lim.x.push_back(t);
      lim.y.push_back(std::stod(f[1]));
      ans.x.push_back(t);
      ans.y.push_back(f[2] == "nan" ? NAN : std::stod(f[2]));
    }
    PlotSpec p;
    p.title = fs::path(path).stem().string();
    p.caption = "relative L2 error of the solver velocity against u_bar and against U_app over time";
    p.xlabel = "t";
    p.ylabel = "relative error";
    p.logx = false;
    p.logy = true;
    std::string svg = fs::path(path).replace_extension(".svg").string();
    write_text_file(svg, svg_plot(p, {lim, ans}));
    ++made;
  }
  if (made == 0) {
    os << "report: no result files in '" << dir << "'\n";
    return exit_config;
  }
  os << "report: wrote " << made << " plot(s)\n";
  return exit_pass;
}

}  // namespace ekman
