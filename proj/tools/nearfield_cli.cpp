#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nearfield/config.hpp"
#include "nearfield/errors.hpp"
#include "nearfield/output.hpp"
#include "nearfield/pipeline.hpp"
#include "nearfield/selftest.hpp"

using namespace nearfield;

namespace {

ExperimentConfig resolve(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_config(arg);
  for (const auto& n : bundled_config_names())
    if (n == arg) return bundled_config(n);
  throw InputError("no config file or bundled config named '" + arg + "'");
}

void apply_overrides(ExperimentConfig& cfg, const std::string& out, const std::string& formats) {
  if (!out.empty()) cfg.output_directory = out;
  if (!formats.empty()) {
    cfg.formats.clear();
    std::stringstream ss(formats);
    for (std::string f; std::getline(ss, f, ',');) {
      if (f != "csv" && f != "svg") throw InputError("unknown format '" + f + "'");
      cfg.formats.push_back(f);
    }
  }
}

void report(const RunResult& r) {
  std::printf("config %s (hash %s): s = %.9f, lambda = %.6g, delta = %g\n", r.config.name.c_str(),
              config_hash(r.config).c_str(), r.geometry.s(), r.lambda_mp, r.config.profile.delta());
  if (r.clusters) {
    std::printf("usable order %d of %d; max |Im lambda| = %.2e\n", r.clusters->usable_order, r.config.N_mat,
                r.eig->max_imag);
    for (const auto& c : r.clusters->clusters) {
      if (c.n > r.config.N / 2) break;
      std::printf("  n=%d lambda0=% .6e  shift+=% .5f shift-=% .5f overlap=%.3f%s%s\n", c.n, c.lambda0, c.shift_plus,
                  c.shift_minus, c.overlap_quality, c.valid ? "" : " INVALID: ", c.flag.c_str());
    }
  }
  if (r.scan)
    std::printf("scan: %zu peaks%s\n", r.scan->peaks.size(), r.scan->low_confidence ? " (low confidence)" : "");
  if (r.reconstructed) {
    std::printf("eigen route: rel L2 vs P_N^even h = %.4f, max coeff err = %.4f\n", r.eig_metrics.rel_l2_vs_projection,
                r.eig_metrics.max_coefficient_error);
    std::printf("cgpt route:  rel L2 vs P_N h      = %.4f, max coeff err = %.4f\n", r.gpt_metrics.rel_l2_vs_projection,
                r.gpt_metrics.max_coefficient_error);
  }
  for (const auto& n : r.notes) std::printf("note: %s\n", n.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Near-field probe reconstruction of a plane perturbation"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_arg, out, formats;
  bool quiet = false;
  app.add_flag("--quiet,-q", quiet, "Suppress the console report");

  auto* run = app.add_subcommand("run", "Run the full pipeline and write artifacts");
  run->add_option("config", config_arg, "Config file or bundled name (example1, example2)")->required();
  run->add_option("--out", out, "Output directory");
  run->add_option("--format", formats, "Comma-separated formats: csv,svg");

  auto* conv = app.add_subcommand("convergence", "Delta and node-count convergence tables");
  conv->add_option("config", config_arg, "Config file or bundled name")->required();
  conv->add_option("--out", out, "Output directory");

  auto* self = app.add_subcommand("selftest", "Internal consistency checks on the bundled configs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (self->parsed()) {
      const auto rep = run_selftest();
      for (const auto& c : rep.checks)
        std::printf("%s  %-10s %-32s %.3e (tol %.0e)\n", c.passed ? "PASS" : "FAIL", c.config.c_str(), c.name.c_str(),
                    c.value, c.tolerance);
      return rep.ok() ? 0 : 2;
    }
    ExperimentConfig cfg = resolve(config_arg);
    apply_overrides(cfg, out, formats);
    if (run->parsed()) {
      const RunResult r = run_pipeline(cfg);
      const auto files = write_run_outputs(r, cfg.output_directory);
      if (!quiet) {
        report(r);
        std::printf("wrote %zu files to %s\n", files.size(), cfg.output_directory.c_str());
      }
      return 0;
    }
    if (conv->parsed()) {
      if (cfg.convergence_deltas.empty() || cfg.convergence_M.empty())
        throw InputError("config has no convergence section");
      const auto rep = convergence_report(cfg, cfg.convergence_deltas, cfg.convergence_M);
      write_convergence_outputs(cfg, rep, cfg.output_directory);
      if (!quiet) {
        for (const auto& row : rep.delta_rows)
          std::printf("delta=%-7g n=%d residual+=%.3e residual-=%.3e ratio=%.2f\n", row.delta, row.n,
                      row.residual_plus, row.residual_minus, row.ratio);
        for (const auto& row : rep.m_rows)
          std::printf("M=%-5d lambda1=% .12e drift=%.3e ratio=%.1f\n", row.M, row.lambda1, row.drift, row.drift_ratio);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
