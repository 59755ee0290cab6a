#include "nearfield/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>
#include <variant>

#include <json.hpp>

#include "nearfield/errors.hpp"

namespace nearfield {

using json = nlohmann::json;

namespace {

const std::set<std::string> kTasks{"forward", "eigen", "scan", "reconstruct", "full", "convergence"};
const std::set<std::string> kFormats{"csv", "svg"};

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw InputError("config: missing key " + where + "." + key);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError("config: bad value for " + where + "." + key + ": " + e.what());
  }
}

const json& section(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_object())
    throw InputError(std::string("config: missing section ") + key);
  return j.at(key);
}

template <typename T>
T get_or(const json& j, const char* key, const std::string& where, T fallback) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

PlaneProfile parse_profile(const json& p) {
  const std::string kind = get<std::string>(p, "kind", "profile");
  const double R = get<double>(p, "support_radius_length", "profile");
  const double delta = get<double>(p, "delta", "profile");
  const bool even = get_or<bool>(p, "even_symmetric", "profile", false);
  ProfileShape shape;
  if (kind == "piecewise_constant") {
    PiecewiseConstant pc;
    for (const auto& iv : get<std::vector<std::vector<double>>>(p, "intervals_length", "profile")) {
      if (iv.size() != 2) throw InputError("config: profile.intervals_length entries must be [left, right]");
      pc.intervals.emplace_back(iv[0], iv[1]);
    }
    pc.value = get<double>(p, "value", "profile");
    shape = pc;
  } else if (kind == "gaussian_bumps") {
    GaussianBumps g;
    g.centers = get<std::vector<double>>(p, "centers_length", "profile");
    g.widths = get<std::vector<double>>(p, "widths_length", "profile");
    g.amplitudes = get<std::vector<double>>(p, "amplitudes", "profile");
    shape = g;
  } else if (kind == "tabulated") {
    Tabulated t;
    t.x = get<std::vector<double>>(p, "x_length", "profile");
    t.y = get<std::vector<double>>(p, "y", "profile");
    shape = t;
  } else if (kind == "flat") {
    return PlaneProfile(PiecewiseConstant{}, R, delta, true);
  } else {
    throw InputError("config: unknown profile.kind '" + kind + "'");
  }
  try {
    return PlaneProfile(shape, R, delta, even);
  } catch (const Error& e) {
    throw InputError(std::string("config: invalid profile: ") + e.what());
  }
}

json profile_to_json(const PlaneProfile& p) {
  json j;
  j["support_radius_length"] = p.support_radius();
  j["delta"] = p.delta();
  j["even_symmetric"] = p.even_symmetric();
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, PiecewiseConstant>) {
          j["kind"] = s.intervals.empty() ? "flat" : "piecewise_constant";
          json iv = json::array();
          for (const auto& [a, b] : s.intervals) iv.push_back({a, b});
          j["intervals_length"] = iv;
          j["value"] = s.value;
        } else if constexpr (std::is_same_v<S, GaussianBumps>) {
          j["kind"] = "gaussian_bumps";
          j["centers_length"] = s.centers;
          j["widths_length"] = s.widths;
          j["amplitudes"] = s.amplitudes;
        } else {
          j["kind"] = "tabulated";
          j["x_length"] = s.x;
          j["y"] = s.y;
        }
      },
      p.shape());
  return j;
}

void validate(const ExperimentConfig& c) {
  if (!(c.r_particle > 0.0)) throw InputError("config: geometry.r_particle_length must be positive");
  if (!(c.d > c.r_particle)) throw InputError("config: geometry.d_length must exceed r_particle_length");
  if (!(c.eps_minus > 0.0 && c.eps_plus > 0.0)) throw InputError("config: permittivities must be positive");
  if (c.eps_minus == c.eps_plus) throw InputError("config: eps_minus == eps_plus gives no contrast");
  if (c.N < 2 || c.N % 2 != 0) throw InputError("config: discretization.N_order must be even and >= 2");
  if (c.N_mat < c.N) throw InputError("config: discretization.N_mat must be >= N_order");
  if (c.M < 8 * c.N_mat) throw InputError("config: discretization.M_nodes must be >= 8 * N_mat");
  if (c.geometry_cutoff < 2 * c.N_mat || 2 * c.geometry_cutoff > c.M)
    throw InputError("config: discretization.geometry_cutoff must lie in [2 N_mat, M / 2]");
  if (c.tasks.empty()) throw InputError("config: tasks must not be empty");
  for (const auto& t : c.tasks)
    if (!kTasks.count(t)) throw InputError("config: unknown task '" + t + "'");
  for (const auto& f : c.formats)
    if (!kFormats.count(f)) throw InputError("config: unknown output format '" + f + "'");
  if (!(c.x_range > 0.0)) throw InputError("config: output.x_range_length must be positive");
  if (c.scan_points < 3) throw InputError("config: scan.omega_points must be >= 3");
  for (int m : c.convergence_M)
    if (m < 16) throw InputError("config: convergence.M_nodes entries must be >= 16");
}

}  // namespace

bool ExperimentConfig::has_task(const std::string& t) const {
  return std::find(tasks.begin(), tasks.end(), t) != tasks.end() ||
         (t != "convergence" && std::find(tasks.begin(), tasks.end(), "full") != tasks.end());
}

bool ExperimentConfig::wants_format(const std::string& f) const {
  return std::find(formats.begin(), formats.end(), f) != formats.end();
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: malformed JSON: ") + e.what());
  }
  ExperimentConfig c;
  c.name = get_or<std::string>(j, "name", "", "experiment");

  const json& g = section(j, "geometry");
  c.d = get<double>(g, "d_length", "geometry");
  c.r_particle = get_or<double>(g, "r_particle_length", "geometry", 1.0);

  const json& m = section(j, "materials");
  c.eps_minus = get<double>(m, "eps_minus", "materials");
  c.eps_plus = get<double>(m, "eps_plus", "materials");
  if (m.contains("drude")) {
    const json& dr = section(m, "drude");
    c.drude.eps0 = get_or<double>(dr, "eps0", "materials.drude", 1.0);
    c.drude.omega_p = get_or<double>(dr, "omega_p_freq", "materials.drude", 1.0);
    c.drude.gamma = get_or<double>(dr, "gamma_freq", "materials.drude", 1e-3);
  }
  c.drude.eps_plus = c.eps_plus;

  c.profile = parse_profile(section(j, "profile"));

  const json& dz = section(j, "discretization");
  c.M = get<int>(dz, "M_nodes", "discretization");
  c.N = get<int>(dz, "N_order", "discretization");
  c.N_mat = get_or<int>(dz, "N_mat", "discretization", std::max(2 * c.N, 12));
  c.geometry_cutoff = get_or<int>(dz, "geometry_cutoff", "discretization", c.M / 5);

  c.tasks = get_or<std::vector<std::string>>(j, "tasks", "", {"full"});
  if (j.contains("output")) {
    const json& o = section(j, "output");
    c.output_directory = get_or<std::string>(o, "directory", "output", "out");
    c.formats = get_or<std::vector<std::string>>(o, "formats", "output", {"csv", "svg"});
    c.x_range = get_or<double>(o, "x_range_length", "output", 1.0);
  }
  if (j.contains("convergence")) {
    const json& cv = section(j, "convergence");
    c.convergence_deltas = get_or<std::vector<double>>(cv, "deltas", "convergence", {});
    c.convergence_M = get_or<std::vector<int>>(cv, "M_nodes", "convergence", {});
  }
  if (j.contains("scan")) c.scan_points = get_or<int>(section(j, "scan"), "omega_points", "scan", 2000);
  c.seed = get_or<std::uint64_t>(j, "seed", "", 0);
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["geometry"] = {{"d_length", c.d}, {"r_particle_length", c.r_particle}};
  j["materials"] = {{"eps_minus", c.eps_minus},
                    {"eps_plus", c.eps_plus},
                    {"drude", {{"eps0", c.drude.eps0}, {"omega_p_freq", c.drude.omega_p}, {"gamma_freq", c.drude.gamma}}}};
  j["profile"] = profile_to_json(c.profile);
  j["discretization"] = {
      {"M_nodes", c.M}, {"N_order", c.N}, {"N_mat", c.N_mat}, {"geometry_cutoff", c.geometry_cutoff}};
  j["tasks"] = c.tasks;
  j["output"] = {{"directory", c.output_directory}, {"formats", c.formats}, {"x_range_length", c.x_range}};
  j["convergence"] = {{"deltas", c.convergence_deltas}, {"M_nodes", c.convergence_M}};
  j["scan"] = {{"omega_points", c.scan_points}};
  j["seed"] = c.seed;
  return j.dump();
}

std::string config_hash(const ExperimentConfig& c) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : canonical_json(c)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig bundled_config(const std::string& name) { return parse_config(bundled_config_text(name)); }

}  // namespace nearfield
