#pragma once

// End-to-end experiment: pushforward -> CGPTs -> exact A -> eigenvalues ->
// cluster matching -> (scan) -> both reconstructions -> pullback -> metrics.

#include <optional>
#include <string>
#include <vector>

#include "nearfield/config.hpp"
#include "nearfield/conformal.hpp"
#include "nearfield/curve.hpp"
#include "nearfield/drude.hpp"
#include "nearfield/gpt.hpp"
#include "nearfield/reconstruct.hpp"
#include "nearfield/spectral.hpp"

namespace nearfield {

struct RouteMetrics {
  double rel_l2_vs_projection = 0.0;  // against P_N h (even part only for the eigen route)
  double rel_l2_vs_truth = 0.0;       // against the full pushforward h
  double max_coefficient_error = 0.0; // max over the route's orders of |h^_rec(k) - h^(k)|
  double max_true_coefficient = 0.0;  // max |h^(k)| over the same orders
  double plane_rel_l2 = 0.0;          // pulled-back profile against delta h0 on the plot range
};

struct RunResult {
  ExperimentConfig config;
  ProbeGeometry geometry;
  double lambda_mp = 0.0;

  DiskPerturbation h_true;         // pushforward of the plane profile, M samples
  FourierCoefficients h_geometry;  // band-limited series used for the boundary
  DiscretizedCurve curve;

  std::optional<CGPTSet> cgpt;
  std::optional<CGPTSet> cgpt_disk;
  Eigen::MatrixXcd cgpt_delta;
  std::optional<TruncatedOperatorA> A;
  std::optional<EigenDecomposition> eig;
  std::optional<SpectralClusters> clusters;
  std::optional<ResonanceScan> scan;

  bool reconstructed = false;
  FourierCoefficients hhat_eig;
  CgptInversion gpt;
  std::vector<double> theta;  // uniform M-grid
  std::vector<double> h_eig, h_gpt, h_proj_even, h_proj_full;
  std::vector<double> x;  // plane plot abscissae
  std::vector<double> h0_true, h0_eig, h0_gpt;  // delta h0 on x
  std::vector<double> h0_proj_even, h0_proj_full;  // pulled-back projections of the true h
  RouteMetrics eig_metrics, gpt_metrics;
  std::vector<std::string> notes;
};

/// Runs the tasks requested in the config; δ = 0 yields flat reconstructions
/// and zero shifts. Errors carry the failing stage in their message.
RunResult run_pipeline(const ExperimentConfig& config);

/// Boundary of D_{1,delta} for a given perturbation series.
DiscretizedCurve perturbed_boundary(int M, const FourierCoefficients& h, double delta, int cutoff);

struct DeltaRow {
  double delta = 0.0;
  int n = 0;
  double residual_plus = 0.0;   // |lambda_{+n} - lambda0_n - delta lambda1_{+n}|
  double residual_minus = 0.0;
  double ratio = 0.0;  // residual(previous delta) / residual(this delta), max over +/-; 0 on the first row
};

struct MRow {
  int M = 0;
  double lambda1 = 0.0;  // largest-magnitude eigenvalue
  double drift = 0.0;    // |lambda1(M) - lambda1(previous M)|
  double drift_ratio = 0.0;
};

struct ConvergenceReport {
  std::vector<DeltaRow> delta_rows;
  std::vector<MRow> m_rows;
  /// h normalized so that max_k |h^(k)| = 1, held fixed across the delta sweep.
  FourierCoefficients h_fixed;
};

/// First-order residuals over a geometric sequence of deltas with h held
/// fixed, and the drift of lambda1 with the node count at fixed geometry.
/// Throws InputError unless at least 3 deltas in geometric progression are given.
ConvergenceReport convergence_report(const ExperimentConfig& config, const std::vector<double>& deltas,
                                     const std::vector<int>& Ms);

}  // namespace nearfield
