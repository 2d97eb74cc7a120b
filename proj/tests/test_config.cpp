#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekman/config.hpp"
#include "ekman/errors.hpp"

using namespace ekman;

namespace {
RunConfig parse(const std::string& text) { return RunConfig::from_text(ConfigText::parse(text, "t.cfg")); }

std::string error_of(const std::string& text)
{
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_CASE("FNV-1a digest")
{
  CHECK(fnv1a_digest({}) == "cbf29ce484222325");
  CHECK(fnv1a_digest({{"a", "1"}, {"b", "two"}}) == "9df925b52d06f841");
}

TEST_CASE("parsing with comments and lists")
{
  RunConfig c = parse("# top\nphysics.beta = 0.25  # inline\nstudy.eps = 0.4, 0.2, 0.1, 0.05, 0.025\nsolver.nonlinear = true\n");
  CHECK(c.beta == 0.25);
  CHECK(c.study_eps.size() == 5);
  CHECK(c.solver.nonlinear);
  CHECK(c.resolved.at("physics.beta") == "0.25");
  CHECK(c.resolved.count("output.dir") == 0);
}

TEST_CASE("digest is stable under key reordering and ignores output.dir")
{
  RunConfig a = parse("physics.beta = 0.125\ndata.center = 3\noutput.dir = x\n");
  RunConfig b = parse("output.dir = y\ndata.center = 3\nphysics.beta = 0.125\n");
  CHECK(a.digest == b.digest);
  RunConfig c = parse("physics.beta = 0.125\ndata.center = 3.1\n");
  CHECK(a.digest != c.digest);
  RunConfig d = a;
  d.override_seed(7);
  CHECK(d.digest != a.digest);
  CHECK(d.resolved.at("seed") == "7");
}

TEST_CASE("diagnostics name the line and key")
{
  CHECK(error_of("physics.beta = 0.1\nphysics.gamma = 1\n").find("t.cfg:2: physics.gamma") != std::string::npos);
  CHECK(error_of("physics.a = 0.75\n").find("physics.beta") != std::string::npos);
  CHECK(error_of("physics.beta = 0.1\nphysics.a = 0.5\n").find("t.cfg:2: physics.a") != std::string::npos);
  CHECK(error_of("physics.beta = -1\n").find("positive") != std::string::npos);
  CHECK(error_of("physics.beta = 0.1\nstudy.eps = 0.1, 0.2, 0.05, 0.01\n").find("study.eps") != std::string::npos);
  CHECK(error_of("physics.beta = 0.1\nstudy.eps = 0.1, 0.05, 0.01\n").find("at least 4") != std::string::npos);
  CHECK(error_of("physics.beta = 0.1\nphysics.beta = 0.2\n").find("t.cfg:2") != std::string::npos);
  CHECK(error_of("physics.beta 0.1\n").find("t.cfg:1") != std::string::npos);
  CHECK(error_of("physics.beta = abc\n").find("physics.beta") != std::string::npos);
  CHECK(error_of("physics.beta = 0.1\nseed = 12x\n").find("seed") != std::string::npos);
  CHECK(error_of("physics.beta = 0.1\ndepth.profile = cubic\n").find("depth.profile") != std::string::npos);
}

TEST_CASE("model objects follow the configuration")
{
  RunConfig c = parse("physics.beta = 0.5\ndepth.profile = tanh\ndepth.H = 4\ndata.family = shore_constant\n");
  CHECK(c.topography().beta() == 0.5);
  CHECK(c.topography().depth().family() == DepthProfile::Family::tanh);
  CHECK(c.data().family() == InitialSwirl::Family::shore_constant);
  CHECK(c.mutation_kind() == Mutation::none);
  CHECK(c.probe() == c.center);
}
