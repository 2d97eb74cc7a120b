#include <CLI11.hpp>

#include <iostream>

#include "ekman/calculus.hpp"
#include "ekman/commands.hpp"
#include "ekman/errors.hpp"

using namespace ekman;

int main(int argc, char** argv)
{
  CLI::App app{"Ekman-layer ansatz verification and rotating-flow solver"};
  app.set_version_flag("--version", tool_version);
  app.require_subcommand(1);

  std::string config_path, output;
  std::uint64_t seed = 0;
  int threads = 0;
  app.add_option("--config", config_path, "configuration file");
  app.add_option("--output", output, "results directory (overrides output.dir)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides seed)");
  app.add_option("--threads", threads, "worker threads for column loops")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "exactness and identity checks");
  auto* study = app.add_subcommand("study", "epsilon-sweep studies");
  std::string which;
  study->add_option("which", which, "convergence | residual | nonlinear | gradient")
      ->required()
      ->check(CLI::IsMember({"convergence", "residual", "nonlinear", "gradient"}));
  auto* solve = app.add_subcommand("solve", "axisymmetric rotating-flow run");
  auto* compare = app.add_subcommand("compare", "solver error against the limit over epsilon");
  auto* report = app.add_subcommand("report", "SVG plots for a results directory");
  std::string report_dir;
  report->add_option("dir", report_dir, "results directory");
  for (auto* s : {verify, study, solve, compare, report}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : exit_config;
  }

  if (threads > 0) set_threads(threads);
  try {
    if (report->parsed()) {
      std::string dir = !report_dir.empty() ? report_dir : output;
      if (dir.empty()) {
        std::cerr << "report: give a results directory\n";
        return exit_config;
      }
      return cmd_report(dir, &std::cout);
    }
    if (config_path.empty()) {
      std::cerr << "--config is required\n";
      return exit_config;
    }
    CommandContext c;
    c.cfg = RunConfig::from_text(ConfigText::load(config_path));
    if (*seed_opt) c.cfg.override_seed(seed);
    c.out = output.empty() ? c.cfg.output_dir : output;
    c.log = &std::cout;
    if (verify->parsed()) return cmd_verify(c);
    if (study->parsed()) return cmd_study(c, which);
    if (solve->parsed()) return cmd_solve(c);
    if (compare->parsed()) return cmd_compare(c);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const NonConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return exit_fail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_fail;
  }
  return exit_config;
}
