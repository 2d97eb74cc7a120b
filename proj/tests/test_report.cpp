#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "ekman/commands.hpp"
#include "ekman/report.hpp"

using namespace ekman;
namespace fs = std::filesystem;

namespace {
StudyTable sample()
{
  StudyTable t;
  t.name = "study_convergence";
  for (double e : {0.2, 0.1, 0.05, 0.025}) t.rows.push_back({e, 2.0 * std::sqrt(e), 0.0, {}});
  t.refit();
  return t;
}
}  // namespace

TEST_CASE("svg output is deterministic and annotated")
{
  StudyTable t = sample();
  std::string a = svg_study(t, "sup over t of the L2 error");
  std::string b = svg_study(t, "sup over t of the L2 error");
  CHECK(a == b);
  CHECK(a.find("<svg") == 0);
  CHECK(a.find("sup over t of the L2 error") != std::string::npos);
  CHECK(a.find("slope 0.5") != std::string::npos);
}

TEST_CASE("special characters are escaped")
{
  PlotSpec p;
  p.title = "a < b & c";
  std::string s = svg_plot(p, {{"x", {1.0, 2.0}, {1.0, 4.0}}});
  CHECK(s.find("a &lt; b &amp; c") != std::string::npos);
}

TEST_CASE("report command")
{
  fs::path dir = fs::temp_directory_path() / "ekman_report_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ostringstream log;
  CHECK(cmd_report(dir.string(), &log) == exit_config);
  CHECK(cmd_report((dir / "missing").string(), &log) == exit_config);
  write_text_file((dir / "study_convergence.csv").string(), sample().to_csv());
  write_text_file((dir / "solver_compare.csv").string(),
                  "t,err_vs_limit,err_vs_ansatz,energy,dissipation\n0,0.2,nan,1,0\n1,0.1,nan,0.8,0.1\n");
  CHECK(cmd_report(dir.string(), &log) == exit_pass);
  CHECK(fs::exists(dir / "study_convergence.svg"));
  CHECK(fs::exists(dir / "solver_compare.svg"));
  std::string first = read_text_file((dir / "study_convergence.svg").string());
  CHECK(cmd_report(dir.string(), &log) == exit_pass);
  CHECK(read_text_file((dir / "study_convergence.svg").string()) == first);
  fs::remove_all(dir);
}
