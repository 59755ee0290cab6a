#pragma once

// Artifact files of a run. Every CSV starts with a metadata comment row
//   # nearfield <version>; config_hash=<hex>; exponent_sign=+2ns; ...
// followed by a header row. Files are written to a temporary name and renamed.

#include <string>
#include <vector>

#include "nearfield/pipeline.hpp"

namespace nearfield {

inline constexpr const char* kVersion = "1.0.0";

std::string metadata_row(const ExperimentConfig& cfg);

/// Write content to path via path.tmp + rename. Creates parent directories.
void atomic_write(const std::string& path, const std::string& content);

/// Writes the run's tables (csv), figure (svg), schema.txt and summary.json
/// into dir. Returns the file names written.
std::vector<std::string> write_run_outputs(const RunResult& run, const std::string& dir);

std::vector<std::string> write_convergence_outputs(const ExperimentConfig& cfg, const ConvergenceReport& rep,
                                                   const std::string& dir);

/// 2 x 2 panel overlay: delta h on [0, 2 pi] and delta h0 on the plot range,
/// for the CGPT route (top) and the eigenvalue route (bottom); truth dotted,
/// projection P_N h grey.
std::string render_figure_svg(const RunResult& run);

}  // namespace nearfield
