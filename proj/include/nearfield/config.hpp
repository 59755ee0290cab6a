#pragma once

// Experiment configuration read from a JSON file. Key names carry their unit
// (`_length` for lengths in the units of d, `_freq` for frequencies in the
// units of omega_p).

#include <cstdint>
#include <string>
#include <vector>

#include "nearfield/conformal.hpp"
#include "nearfield/drude.hpp"

namespace nearfield {

struct ExperimentConfig {
  std::string name = "experiment";
  double d = 2.0;
  double r_particle = 1.0;
  double eps_minus = 3.0;
  double eps_plus = 1.0;
  DrudeMaterial drude;  // drude.eps_plus mirrors eps_plus
  PlaneProfile profile = PlaneProfile::flat();
  int M = 300;
  int N = 8;
  int N_mat = 16;
  /// Band limit of the Nystrom geometry: the pushforward series is passed
  /// through an exponential filter with this cutoff before the boundary is
  /// built (defaults to M / 5).
  int geometry_cutoff = 60;
  std::vector<std::string> tasks{"full"};
  std::string output_directory = "out";
  std::vector<std::string> formats{"csv", "svg"};
  double x_range = 1.0;  // plane plots cover |x| <= x_range
  std::vector<double> convergence_deltas;
  std::vector<int> convergence_M;
  int scan_points = 2000;
  std::uint64_t seed = 0;

  bool has_task(const std::string& t) const;
  bool wants_format(const std::string& f) const;
};

/// Parse and validate. Throws InputError with the offending key on failure.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// Canonical serialization (sorted keys, fixed number format); two configs
/// are equal iff their canonical forms are.
std::string canonical_json(const ExperimentConfig& cfg);
/// 64-bit FNV-1a of the canonical form, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

/// Names of the configs compiled into the library ("example1", "example2").
std::vector<std::string> bundled_config_names();
/// Raw JSON text of a bundled config; throws InputError for unknown names.
const std::string& bundled_config_text(const std::string& name);
ExperimentConfig bundled_config(const std::string& name);

}  // namespace nearfield
