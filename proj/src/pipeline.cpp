#include "nearfield/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "nearfield/errors.hpp"

namespace nearfield {

namespace {

constexpr int kPlanePoints = 401;
constexpr int kPullbackSamples = 4096;

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(std::string(name) + ": " + e.what());
  }
}

auto max_coefficient(const FourierCoefficients& c, int N, int stride) {
  double m = 0.0;
  for (int k = 0; k <= N; k += stride) m = std::max(m, std::abs(c(k)));
  return m;
}

double max_coefficient_error(const FourierCoefficients& a, const FourierCoefficients& b, int N, int stride) {
  double m = 0.0;
  for (int k = 0; k <= N; k += stride) m = std::max(m, std::abs(a(k) - b(k)));
  return m;
}

// Pull a truncated series back to the plane and resample it on x.
std::vector<double> plane_profile(const FourierCoefficients& c, int N, bool even_only, const ProbeGeometry& geom,
                                  double delta, std::span<const double> x, double x_max) {
  if (delta == 0.0) return std::vector<double>(x.size(), 0.0);
  const auto theta = uniform_theta_grid(kPullbackSamples);
  const auto h = even_only ? synthesize_even(c, N, theta) : synthesize_full(c, N, theta);
  return resample_plane(reconstruct_plane(theta, h, geom, delta, x_max), x);
}

}  // namespace

DiscretizedCurve perturbed_boundary(int M, const FourierCoefficients& h, double delta, int cutoff) {
  return make_perturbed_circle(M, exponential_filter(h, cutoff), delta);
}

RunResult run_pipeline(const ExperimentConfig& cfg) {
  RunResult r{cfg, ProbeGeometry(cfg.d, cfg.r_particle)};
  const double s = r.geometry.s();
  const double delta = cfg.profile.delta();
  r.lambda_mp = contrast(cfg.eps_minus, cfg.eps_plus).real();

  r.h_true = stage("pushforward", [&] { return pushforward_profile(cfg.profile, r.geometry, cfg.M); });
  r.h_geometry = exponential_filter(r.h_true.fourier, cfg.geometry_cutoff);
  r.curve = stage("boundary", [&] { return make_perturbed_circle(cfg.M, r.h_geometry, delta); });
  r.theta = r.h_true.theta;

  r.cgpt = stage("cgpt", [&] { return compute_cgpt(r.curve, r.lambda_mp, cfg.N_mat); });
  r.cgpt_disk = stage("cgpt", [&] { return compute_cgpt(make_circle(cfg.M, 1.0), r.lambda_mp, cfg.N_mat); });
  r.cgpt_delta = cgpt_delta(*r.cgpt, *r.cgpt_disk);
  r.A = stage("assemble", [&] { return assemble_exact_A(*r.cgpt, s, cfg.N_mat); });
  if (!(cfg.has_task("eigen") || cfg.has_task("scan") || cfg.has_task("reconstruct"))) return r;

  r.eig = stage("eigendecompose", [&] { return eigendecompose(*r.A); });
  r.clusters = stage("match", [&] { return match_clusters(*r.eig, s, r.lambda_mp, delta); });

  if (cfg.has_task("scan")) {
    r.scan = stage("scan", [&] {
      std::vector<ScanMode> modes;
      for (const auto& c : r.clusters->clusters) {
        if (c.n > cfg.N / 2) break;
        modes.push_back({c.lambda_plus, default_coupling(c.n, true, s)});
        if (!c.degenerate) modes.push_back({c.lambda_minus, default_coupling(c.n, false, s)});
      }
      std::vector<double> lams;
      for (const auto& m : modes) lams.push_back(m.lambda);
      return resonance_scan(modes, cfg.drude, resonance_grid(lams, cfg.drude, cfg.scan_points));
    });
    r.notes.push_back("scan couplings: default e^{-|n|s} (even), 0.3 e^{-|n|s} (odd)");
  }
  if (!cfg.has_task("reconstruct")) return r;

  const int N = cfg.N;
  if (delta > 0.0) {
    r.hhat_eig = stage("reconstruct (eigen)", [&] { return fourier_from_shifts(*r.clusters, r.lambda_mp, s, N); });
    r.gpt = stage("reconstruct (cgpt)",
                  [&] { return fourier_from_cgpt(r.cgpt_delta, cfg.eps_minus, cfg.eps_plus, delta, N); });
  } else {
    r.hhat_eig = FourierCoefficients(N);
    r.gpt.coefficients = FourierCoefficients(N);
    r.gpt.pairs.resize(static_cast<std::size_t>(2 * N + 1));
    r.notes.push_back("delta = 0: flat plane, all shifts and coefficients are zero");
  }
  r.reconstructed = true;

  r.h_eig = synthesize_even(r.hhat_eig, N, r.theta);
  r.h_gpt = synthesize_full(r.gpt.coefficients, N, r.theta);
  r.h_proj_even = synthesize_even(r.h_true.fourier, N, r.theta);
  r.h_proj_full = synthesize_full(r.h_true.fourier, N, r.theta);

  const auto fill = [&](RouteMetrics& m, const std::vector<double>& rec, const std::vector<double>& proj,
                        const FourierCoefficients& c, int stride) {
    const auto vs_proj = error_metrics(rec, proj);
    const auto vs_truth = error_metrics(rec, r.h_true.samples);
    // Relative to ||h||_2, the normalization of the acceptance budgets.
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
      num += (rec[i] - proj[i]) * (rec[i] - proj[i]);
      den += r.h_true.samples[i] * r.h_true.samples[i];
    }
    m.rel_l2_vs_projection = den > 0.0 ? std::sqrt(num / den) : vs_proj.rel_l2;
    m.rel_l2_vs_truth = vs_truth.rel_l2;
    m.max_coefficient_error = max_coefficient_error(c, r.h_true.fourier, N, stride);
    m.max_true_coefficient = max_coefficient(r.h_true.fourier, N, stride);
  };
  fill(r.eig_metrics, r.h_eig, r.h_proj_even, r.hhat_eig, 2);
  fill(r.gpt_metrics, r.h_gpt, r.h_proj_full, r.gpt.coefficients, 1);

  stage("pullback", [&] {
    r.x.resize(kPlanePoints);
    for (int i = 0; i < kPlanePoints; ++i) r.x[i] = -cfg.x_range + 2.0 * cfg.x_range * i / (kPlanePoints - 1);
    r.h0_true.clear();
    for (double xv : r.x) r.h0_true.push_back(delta * cfg.profile.evaluate(xv));
    r.h0_eig = plane_profile(r.hhat_eig, N, true, r.geometry, delta, r.x, 1.5 * cfg.x_range);
    r.h0_gpt = plane_profile(r.gpt.coefficients, N, false, r.geometry, delta, r.x, 1.5 * cfg.x_range);
    r.h0_proj_even = plane_profile(r.h_true.fourier, N, true, r.geometry, delta, r.x, 1.5 * cfg.x_range);
    r.h0_proj_full = plane_profile(r.h_true.fourier, N, false, r.geometry, delta, r.x, 1.5 * cfg.x_range);
    r.eig_metrics.plane_rel_l2 = error_metrics(r.h0_eig, r.h0_true).rel_l2;
    r.gpt_metrics.plane_rel_l2 = error_metrics(r.h0_gpt, r.h0_true).rel_l2;
    return 0;
  });
  return r;
}

ConvergenceReport convergence_report(const ExperimentConfig& cfg, const std::vector<double>& deltas,
                                     const std::vector<int>& Ms) {
  if (deltas.size() < 3) throw InputError("convergence_report: need >= 3 values of delta");
  const double q = deltas[1] / deltas[0];
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0) || std::abs(deltas[i] / deltas[i - 1] - q) > 1e-9 * std::abs(q))
      throw InputError("convergence_report: deltas must form a geometric progression");
  }
  if (!(deltas[0] > 0.0)) throw InputError("convergence_report: deltas must be positive");

  const ProbeGeometry geom(cfg.d, cfg.r_particle);
  const double s = geom.s();
  const double lam = contrast(cfg.eps_minus, cfg.eps_plus).real();

  ConvergenceReport rep;
  const auto h = pushforward_profile(cfg.profile, geom, cfg.M);
  const FourierCoefficients hg = exponential_filter(h.fourier, cfg.geometry_cutoff);
  double scale = 0.0;
  for (int k = -hg.max_order(); k <= hg.max_order(); ++k) scale = std::max(scale, std::abs(hg(k)));
  if (scale == 0.0) throw InputError("convergence_report: profile is flat");
  rep.h_fixed = FourierCoefficients(hg.max_order());
  for (int k = -hg.max_order(); k <= hg.max_order(); ++k) rep.h_fixed.at(k) = hg(k) / scale;

  const int n_use = cfg.N / 2;
  const auto predicted = first_order_shifts(rep.h_fixed, s, lam, n_use);
  std::vector<DeltaRow> previous;
  for (double d : deltas) {
    const auto curve = make_perturbed_circle(cfg.M, rep.h_fixed, d);
    const auto A = assemble_exact_A(compute_cgpt(curve, lam, cfg.N_mat), s, cfg.N_mat);
    const auto clusters = match_clusters(eigendecompose(A), s, lam, d);
    std::vector<DeltaRow> rows;
    for (int n = 1; n <= n_use; ++n) {
      const Cluster& c = clusters.at(n);
      DeltaRow row;
      row.delta = d;
      row.n = n;
      row.residual_plus = std::abs(c.lambda_plus - c.lambda0 - d * predicted[n - 1].plus);
      row.residual_minus = std::abs(c.lambda_minus - c.lambda0 - d * predicted[n - 1].minus);
      if (!previous.empty()) {
        const double prev = std::max(previous[n - 1].residual_plus, previous[n - 1].residual_minus);
        const double cur = std::max(row.residual_plus, row.residual_minus);
        row.ratio = cur > 0.0 ? prev / cur : 0.0;
      }
      rows.push_back(row);
    }
    rep.delta_rows.insert(rep.delta_rows.end(), rows.begin(), rows.end());
    previous = rows;
  }

  // Quadrature convergence: same band-limited boundary, varying node count.
  const double delta = cfg.profile.delta();
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    const int M = Ms[i];
    const int order = std::max(1, std::min(cfg.N_mat, M / 8));
    const auto curve = make_perturbed_circle(M, hg, delta);
    const auto eig = eigendecompose(assemble_exact_A(compute_cgpt(curve, lam, order), s, order));
    MRow row;
    row.M = M;
    row.lambda1 = eig.pairs.front().value;
    if (i > 0) {
      row.drift = std::abs(row.lambda1 - rep.m_rows.back().lambda1);
      if (i > 1 && row.drift > 0.0) row.drift_ratio = rep.m_rows.back().drift / row.drift;
    }
    rep.m_rows.push_back(row);
  }
  return rep;
}

}  // namespace nearfield
