#include "ekman/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "ekman/errors.hpp"

namespace ekman {

namespace {

std::string trim(const std::string& s)
{
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool valid_key(const std::string& k)
{
  if (k.empty() || k.front() == '.' || k.back() == '.') return false;
  return std::all_of(k.begin(), k.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) ||
           c == '_' || c == '.';
  });
}

std::string fmt(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

}  // namespace

ConfigText ConfigText::parse(const std::string& text, const std::string& origin)
{
  ConfigText c;
  c.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(n) + ": expected 'section.key = value'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (!valid_key(key)) throw ConfigError(origin + ":" + std::to_string(n) + ": malformed key '" + key + "'");
    if (c.values_.count(key))
      throw ConfigError(origin + ":" + std::to_string(n) + ": duplicate key '" + key + "' (first on line " +
                        std::to_string(c.lines_[key]) + ")");
    c.values_[key] = value;
    c.lines_[key] = n;
  }
  return c;
}

ConfigText ConfigText::load(const std::string& path)
{
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path);
}

int ConfigText::line_of(const std::string& key) const
{
  auto it = lines_.find(key);
  return it == lines_.end() ? 0 : it->second;
}

std::string fnv1a_digest(const std::map<std::string, std::string>& kv)
{
  std::uint64_t h = 14695981039346656037ull;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [k, v] : kv) feed(k + "=" + v + "\n");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig RunConfig::from_text(const ConfigText& c)
{
  RunConfig r;
  std::string where;
  auto fail = [&](const std::string& msg) -> void { throw ConfigError(where + ": " + msg); };
  auto num = [&](const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(v, &used);
    } catch (const std::exception&) {
      fail("expected a number, got '" + v + "'");
    }
    if (used != v.size()) fail("expected a number, got '" + v + "'");
    return x;
  };
  auto integer = [&](const std::string& v) {
    double x = num(v);
    if (x != std::floor(x)) fail("expected an integer, got '" + v + "'");
    return int(x);
  };
  auto list = [&](const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) out.push_back(num(item));
    }
    return out;
  };
  auto boolean = [&](const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    fail("expected true or false, got '" + v + "'");
    return false;
  };
  auto choice = [&](const std::string& v, std::initializer_list<const char*> opts) {
    for (const char* o : opts)
      if (v == o) return v;
    std::string all;
    for (const char* o : opts) all += std::string(all.empty() ? "" : ", ") + o;
    fail("expected one of {" + all + "}, got '" + v + "'");
    return v;
  };

  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> keys = {
      {"seed",
       [&](auto v) {
         std::size_t used = 0;
         try {
           r.seed = std::stoull(v, &used);
         } catch (const std::exception&) {
           used = 0;
         }
         if (used == 0 || used != v.size()) fail("expected an unsigned integer, got '" + v + "'");
       }},
      {"output.dir", [&](auto v) { r.output_dir = v; }},
      {"physics.beta", [&](auto v) { r.beta = num(v); }},
      {"physics.a", [&](auto v) { r.a = num(v); }},
      {"geometry.shore", [&](auto v) { r.shore = choice(v, {"disk", "curve"}); }},
      {"geometry.R", [&](auto v) { r.R = num(v); }},
      {"geometry.modes_a", [&](auto v) { r.shore_a = list(v); }},
      {"geometry.modes_b", [&](auto v) { r.shore_b = list(v); }},
      {"depth.profile", [&](auto v) { r.depth_profile = choice(v, {"exponential", "tanh", "flat_cap"}); }},
      {"depth.rho0", [&](auto v) { r.rho0 = num(v); }},
      {"depth.H", [&](auto v) { r.H = num(v); }},
      {"depth.ell", [&](auto v) { r.ell = num(v); }},
      {"data.family", [&](auto v) { r.data_family = choice(v, {"gaussian", "shore_constant"}); }},
      {"data.amplitude", [&](auto v) { r.amplitude = num(v); }},
      {"data.center", [&](auto v) { r.center = num(v); }},
      {"data.width", [&](auto v) { r.width = num(v); }},
      {"study.eps", [&](auto v) { r.study_eps = list(v); }},
      {"study.t_grid", [&](auto v) { r.t_grid = integer(v); }},
      {"study.n_sample_points", [&](auto v) { r.n_sample_points = integer(v); }},
      {"study.t_star_factor", [&](auto v) { r.t_star_factor = num(v); }},
      {"study.nonlinear_a", [&](auto v) { r.nonlinear_a = num(v); }},
      {"quad.n_rho", [&](auto v) { r.quad.n_rho = integer(v); }},
      {"quad.n_z_interior", [&](auto v) { r.quad.n_z_interior = integer(v); }},
      {"quad.n_z_layer", [&](auto v) { r.quad.n_z_layer = integer(v); }},
      {"quad.n_theta", [&](auto v) { r.quad.n_theta = integer(v); }},
      {"verify.eps", [&](auto v) { r.verify_eps = list(v); }},
      {"verify.mutation", [&](auto v) { r.mutation = choice(v, {"none", "sign_flip", "cutoff_variable"}); }},
      {"verify.n_profiles", [&](auto v) { r.n_profiles = integer(v); }},
      {"verify.n_points_per_profile", [&](auto v) { r.n_points_per_profile = integer(v); }},
      {"verify.n_pairs", [&](auto v) { r.n_pairs = integer(v); }},
      {"solver.eps", [&](auto v) { r.solver_eps = num(v); }},
      {"solver.nr", [&](auto v) { r.solver.nr = integer(v); }},
      {"solver.nz", [&](auto v) { r.solver.nz = integer(v); }},
      {"solver.dt", [&](auto v) { r.solver.dt = num(v); }},
      {"solver.tmax", [&](auto v) { r.solver.tmax = num(v); }},
      {"solver.nonlinear", [&](auto v) { r.solver.nonlinear = boolean(v); }},
      {"solver.rout", [&](auto v) { r.solver.rout = num(v); }},
      {"solver.wall_factor", [&](auto v) { r.solver.wall_factor = num(v); }},
      {"solver.stretch", [&](auto v) { r.solver.stretch = num(v); }},
      {"solver.decay", [&](auto v) { r.decay = choice(v, {"plateau", "local", "none"}); }},
      {"solver.probe_rho", [&](auto v) { r.probe_rho = num(v); }},
      {"compare.eps", [&](auto v) { r.compare_eps = list(v); }},
  };

  for (const auto& [k, v] : c.values()) {
    where = c.origin() + ":" + std::to_string(c.line_of(k)) + ": " + k;
    auto it = keys.find(k);
    if (it == keys.end()) fail("unknown key");
    it->second(v);
  }
  where = c.origin();
  if (!c.has("physics.beta")) fail("missing required key physics.beta");

  auto check = [&](const std::string& key, bool ok, const std::string& msg) {
    where = c.origin() + (c.line_of(key) ? ":" + std::to_string(c.line_of(key)) : "") + ": " + key;
    if (!ok) fail(msg);
  };
  check("physics.beta", r.beta > 0.0, "must be positive");
  check("physics.a", r.a > 2.0 / 3.0 && r.a < 1.0, "must lie in (2/3, 1)");
  check("study.nonlinear_a", r.nonlinear_a > 2.0 / 3.0 && r.nonlinear_a < 1.0, "must lie in (2/3, 1)");
  check("geometry.R", r.R > 0.0, "must be positive");
  check("depth.H", r.H > 0.0, "must be positive");
  check("depth.ell", r.ell > 0.0, "must be positive");
  check("depth.rho0", r.rho0 > 0.0, "must be positive");
  check("data.amplitude", r.amplitude > 0.0, "must be positive");
  check("data.width", r.width > 0.0, "must be positive");
  check("data.center", r.center > r.rho0, "must lie beyond depth.rho0");
  auto decreasing = [](const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!(v[i] > 0.0) || (i && !(v[i] < v[i - 1]))) return false;
    return true;
  };
  check("study.eps", decreasing(r.study_eps) && r.study_eps.size() >= 4,
        "needs at least 4 strictly decreasing positive values");
  check("compare.eps", decreasing(r.compare_eps) && !r.compare_eps.empty(),
        "needs strictly decreasing positive values");
  check("verify.eps", decreasing(r.verify_eps) && !r.verify_eps.empty(),
        "needs strictly decreasing positive values");
  check("solver.eps", r.solver_eps > 0.0, "must be positive");
  check("study.t_grid", r.t_grid >= 4, "needs at least 4 points");
  check("study.n_sample_points", r.n_sample_points > 0, "must be positive");
  check("verify.n_profiles", r.n_profiles > 0, "must be positive");
  check("verify.n_points_per_profile", r.n_points_per_profile > 0, "must be positive");
  check("verify.n_pairs", r.n_pairs > 0, "must be positive");
  check("quad.n_rho", r.quad.n_rho > 0 && r.quad.n_rho <= 128, "must lie in [1, 128]");
  check("quad.n_z_interior", r.quad.n_z_interior > 0 && r.quad.n_z_interior <= 128, "must lie in [1, 128]");
  check("quad.n_z_layer", r.quad.n_z_layer > 0 && r.quad.n_z_layer <= 128, "must lie in [1, 128]");
  check("quad.n_theta", r.quad.n_theta > 0, "must be positive");
  check("geometry.modes_b", r.shore_a.size() == r.shore_b.size(), "needs as many entries as geometry.modes_a");
  r.quad.t_star_factor = r.t_star_factor;

  auto& m = r.resolved;
  m["seed"] = std::to_string(r.seed);
  m["physics.beta"] = fmt(r.beta);
  m["physics.a"] = fmt(r.a);
  m["geometry.shore"] = r.shore;
  m["geometry.R"] = fmt(r.R);
  m["geometry.modes_a"] = fmt_list(r.shore_a);
  m["geometry.modes_b"] = fmt_list(r.shore_b);
  m["depth.profile"] = r.depth_profile;
  m["depth.rho0"] = fmt(r.rho0);
  m["depth.H"] = fmt(r.H);
  m["depth.ell"] = fmt(r.ell);
  m["data.family"] = r.data_family;
  m["data.amplitude"] = fmt(r.amplitude);
  m["data.center"] = fmt(r.center);
  m["data.width"] = fmt(r.width);
  m["study.eps"] = fmt_list(r.study_eps);
  m["study.t_grid"] = std::to_string(r.t_grid);
  m["study.n_sample_points"] = std::to_string(r.n_sample_points);
  m["study.t_star_factor"] = fmt(r.t_star_factor);
  m["study.nonlinear_a"] = fmt(r.nonlinear_a);
  m["quad.n_rho"] = std::to_string(r.quad.n_rho);
  m["quad.n_z_interior"] = std::to_string(r.quad.n_z_interior);
  m["quad.n_z_layer"] = std::to_string(r.quad.n_z_layer);
  m["quad.n_theta"] = std::to_string(r.quad.n_theta);
  m["verify.eps"] = fmt_list(r.verify_eps);
  m["verify.mutation"] = r.mutation;
  m["verify.n_profiles"] = std::to_string(r.n_profiles);
  m["verify.n_points_per_profile"] = std::to_string(r.n_points_per_profile);
  m["verify.n_pairs"] = std::to_string(r.n_pairs);
  m["solver.eps"] = fmt(r.solver_eps);
  m["solver.nr"] = std::to_string(r.solver.nr);
  m["solver.nz"] = std::to_string(r.solver.nz);
  m["solver.dt"] = fmt(r.solver.dt);
  m["solver.tmax"] = fmt(r.solver.tmax);
  m["solver.nonlinear"] = r.solver.nonlinear ? "true" : "false";
  m["solver.rout"] = fmt(r.solver.rout);
  m["solver.wall_factor"] = fmt(r.solver.wall_factor);
  m["solver.stretch"] = fmt(r.solver.stretch);
  m["solver.decay"] = r.decay;
  m["solver.probe_rho"] = fmt(r.probe_rho);
  m["compare.eps"] = fmt_list(r.compare_eps);
  r.digest = fnv1a_digest(m);
  return r;
}

Topography RunConfig::topography() const
{
  ConvexShore s = shore == "disk" ? ConvexShore::disk(R) : ConvexShore::curve(R, shore_a, shore_b);
  DepthProfile::Family f = depth_profile == "exponential" ? DepthProfile::Family::exponential
                           : depth_profile == "tanh"      ? DepthProfile::Family::tanh
                                                          : DepthProfile::Family::flat_cap;
  return Topography(s, DepthProfile(f, rho0, H, ell), beta);
}

InitialSwirl RunConfig::data() const
{
  return InitialSwirl(data_family == "gaussian" ? InitialSwirl::Family::gaussian
                                                : InitialSwirl::Family::shore_constant,
                      amplitude, center, width);
}

Mutation RunConfig::mutation_kind() const
{
  if (mutation == "sign_flip") return Mutation::sign_flip;
  if (mutation == "cutoff_variable") return Mutation::cutoff_variable;
  return Mutation::none;
}

}  // namespace ekman
