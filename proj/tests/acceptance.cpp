// Acceptance suite: one PASS/FAIL line per criterion, detail lines indented.
// Exit status is the number of failing criteria (capped at 1 for ctest).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nearfield/conformal.hpp"
#include "nearfield/config.hpp"
#include "nearfield/curve.hpp"
#include "nearfield/drude.hpp"
#include "nearfield/gpt.hpp"
#include "nearfield/layer_potentials.hpp"
#include "nearfield/pipeline.hpp"
#include "nearfield/reconstruct.hpp"
#include "nearfield/selftest.hpp"
#include "nearfield/spectral.hpp"

using namespace nearfield;

namespace {

// Pinned tolerances.
constexpr double kC1RelTol = 1e-6;
constexpr double kC1Runtime = 10.0;
constexpr double kC2RelTol = 1e-8;
constexpr double kC2Runtime = 5.0;
constexpr double kRatioCentre = 4.0, kRatioSlack = 0.25;  // 4 +- 25 %
constexpr double kC3Runtime = 30.0;
constexpr double kC4Runtime = 30.0;
constexpr double kC5Tol = 1e-12;
constexpr double kLinearRatio = 2.0, kLinearSlack = 0.4;  // 2 +- 0.4
constexpr double kEigenL2Base = 0.05, kEigenL2PerDelta = 1.0;  // budget 0.05 + delta
constexpr double kGptL2Base = 0.1, kGptL2PerDelta = 1.0;       // budget 0.1 + delta
constexpr double kC6CoeffFrac = 0.1;
constexpr double kC7CoeffFrac = 0.2;
constexpr double kPlaneCorrelation = 0.9;
constexpr double kC6Runtime = 60.0, kC7Runtime = 60.0;
constexpr double kC8ResolutionFactor = 2.0;
constexpr int kC8GridPoints = 2000;
constexpr double kC8Runtime = 10.0;
constexpr double kC9Runtime = 60.0;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;
  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok    " : "FAILED ") + what);
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, double runtime_limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.check(false, std::string("exception: ") + e.what());
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.check(dt <= runtime_limit, fmt("runtime %.2f s <= %.0f s", dt, runtime_limit));
  std::printf("%s criterion %d: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, dt);
  for (const auto& d : o.details) std::printf("      %s\n", d.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

bool ratio_ok(double r, double centre, double slack_frac) { return std::abs(r - centre) <= slack_frac * centre; }

double two_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

ExperimentConfig with_delta(ExperimentConfig cfg, double delta) {
  const PlaneProfile& p = cfg.profile;
  cfg.profile = PlaneProfile(p.shape(), p.support_radius(), delta, p.even_symmetric());
  return cfg;
}

double even_coefficient_error(const RunResult& r) {
  double m = 0.0;
  for (int k = 0; k <= r.config.N; k += 2) m = std::max(m, std::abs(r.hhat_eig(k) - r.h_true.fourier(k)));
  return m;
}

double even_coefficient_max(const RunResult& r) {
  double m = 0.0;
  for (int k = 0; k <= r.config.N; k += 2) m = std::max(m, std::abs(r.h_true.fourier(k)));
  return m;
}

void end_to_end(Outcome& o, const std::string& name, double coeff_frac, bool check_gpt) {
  const ExperimentConfig cfg = bundled_config(name);
  const double delta = cfg.profile.delta();
  const RunResult r = run_pipeline(cfg);
  const RunResult half = run_pipeline(with_delta(cfg, 0.5 * delta));

  const double err = even_coefficient_error(r), scale = even_coefficient_max(r);
  o.check(err <= coeff_frac * scale,
          fmt("max_k |h_eig(2k) - h(2k)| = %.4g <= %.2g * %.4g = %.4g", err, coeff_frac, scale, coeff_frac * scale));
  for (int k = 0; k <= cfg.N; k += 2)
    o.details.push_back(fmt("       k=%d  true % .5f  eig % .5f  gpt % .5f", k, r.h_true.fourier(k).real(),
                            r.hhat_eig(k).real(), r.gpt.coefficients(k).real()));

  const double err_half = even_coefficient_error(half);
  const double ratio = err / err_half;
  o.check(ratio_ok(ratio, kLinearRatio, kLinearSlack / kLinearRatio),
          fmt("coefficient error delta=%g: %.4g, delta=%g: %.4g, ratio %.3f in 2 +- 0.4", delta, err, 0.5 * delta,
              err_half, ratio));

  const double eig_budget = kEigenL2Base + kEigenL2PerDelta * delta;
  o.check(r.eig_metrics.rel_l2_vs_projection <= eig_budget,
          fmt("||h_eig - P_even h|| / ||h|| = %.4f <= %.4f", r.eig_metrics.rel_l2_vs_projection, eig_budget));

  // The plane overlay is compared with the pulled-back projection, which is
  // the profile the even orders can resolve.
  if (two_norm(r.h0_proj_even) > 0.0) {
    const double c = correlation(r.h0_eig, r.h0_proj_even);
    o.check(c >= kPlaneCorrelation, fmt("plane overlay correlation with pulled-back P_even h = %.4f >= %.2f", c,
                                        kPlaneCorrelation));
  }
  if (check_gpt) {
    const double gpt_budget = kGptL2Base + kGptL2PerDelta * delta;
    o.check(r.gpt_metrics.rel_l2_vs_projection <= gpt_budget,
            fmt("||h_GPT - P_N h|| / ||h|| = %.4f <= %.4f", r.gpt_metrics.rel_l2_vs_projection, gpt_budget));
    const double c = correlation(r.h0_gpt, r.h0_proj_full);
    o.check(c >= kPlaneCorrelation,
            fmt("plane overlay correlation with pulled-back P_N h = %.4f >= %.2f", c, kPlaneCorrelation));
  } else {
    o.details.push_back(fmt("       (info) ||h_GPT - P_N h|| / ||h|| = %.4f", r.gpt_metrics.rel_l2_vs_projection));
  }
}

}  // namespace

int main() {
  criterion(1, "unperturbed spectrum closed form", kC1Runtime, [](Outcome& o) {
    const ProbeGeometry g(2.0, 1.0);
    const double e2s = 7.0 + 4.0 * std::sqrt(3.0);
    const double lam = 1.0;
    const int N_mat = 12, M = 300;
    const auto cgpt = compute_cgpt(make_circle(M, 1.0), contrast(3.0, 1.0), N_mat);
    const auto eig = eigendecompose(assemble_exact_A(cgpt, g.s(), N_mat));
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n) {
      const double oracle = -std::pow(e2s, -n) / (4.0 * lam);
      for (int j = 0; j < 2; ++j)
        worst = std::max(worst, std::abs(eig.pairs[2 * (n - 1) + j].value - oracle) / std::abs(oracle));
    }
    o.details.push_back(fmt("lambda0_1 = %.9f (oracle %.9f)", eig.pairs[0].value, -1.0 / (4.0 * e2s)));
    o.check(worst <= kC1RelTol, fmt("max relative error over 6 doublets %.3e <= %.0e", worst, kC1RelTol));
  });

  criterion(2, "disk CGPT oracle", kC2Runtime, [](Outcome& o) {
    const auto disk = make_circle(300, 1.0);
    double worst = 0.0;
    for (cplx lam : {cplx(1.0), cplx(2.0), cplx(1.5, 0.1)}) {
      const auto cgpt = compute_cgpt(disk, lam, 8);
      for (int n = 1; n <= 8; ++n) {
        const cplx oracle = 2.0 * kPi * n / lam;
        worst = std::max(worst, std::abs(cgpt.N2(n - 1, n - 1) - oracle) / std::abs(oracle));
      }
    }
    o.check(worst <= kC2RelTol, fmt("max relative error %.3e <= %.0e", worst, kC2RelTol));
  });

  criterion(3, "shape-derivative lemma order", kC3Runtime, [](Outcome& o) {
    const int M = 300, order = 3;
    const double eps_D = 3.0, eps_0 = 1.0;
    FourierCoefficients h(2);
    h.at(2) = h.at(-2) = 0.5;  // cos 2 theta
    const auto ref = compute_cgpt(make_circle(M, 1.0), contrast(eps_D, eps_0), order);
    const SignedBasis b(order);
    const std::vector<std::pair<int, int>> pairs{{1, 3}, {1, -1}, {2, 2}};
    std::vector<std::vector<double>> res(pairs.size());
    for (double delta : {2e-2, 1e-2, 5e-3}) {
      const auto cg = compute_cgpt(make_perturbed_circle(M, h, delta), contrast(eps_D, eps_0), order);
      const Eigen::MatrixXcd dN = cgpt_delta(cg, ref);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [n, m] = pairs[p];
        const cplx pred = shape_derivative_prediction(eps_D, eps_0, delta, h, n, m);
        res[p].push_back(std::abs(dN(b.index(n), b.index(m)) - pred));
      }
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const double r1 = res[p][0] / res[p][1], r2 = res[p][1] / res[p][2];
      o.check(ratio_ok(r1, kRatioCentre, kRatioSlack) && ratio_ok(r2, kRatioCentre, kRatioSlack),
              fmt("(n,m)=(%d,%d): residuals %.3e %.3e %.3e, ratios %.3f %.3f", pairs[p].first, pairs[p].second,
                  res[p][0], res[p][1], res[p][2], r1, r2));
    }
  });

  criterion(4, "eigenvalue perturbation order", kC4Runtime, [](Outcome& o) {
    const ExperimentConfig cfg = bundled_config("example1");
    const auto rep = convergence_report(cfg, {2e-2, 1e-2, 5e-3}, {});
    for (const auto& row : rep.delta_rows) {
      if (row.n > 3 || row.ratio == 0.0) continue;
      o.check(ratio_ok(row.ratio, kRatioCentre, kRatioSlack),
              fmt("n=%d delta=%g: residuals %.3e / %.3e, halving ratio %.3f", row.n, row.delta, row.residual_plus,
                  row.residual_minus, row.ratio));
    }
  });

  criterion(5, "inversion round trip (analytic)", 5.0, [](Outcome& o) {
    const ExperimentConfig cfg = bundled_config("example1");
    const double s = ProbeGeometry(cfg.d, cfg.r_particle).s();
    const double lam = contrast(cfg.eps_minus, cfg.eps_plus).real();
    FourierCoefficients h(2);
    h.at(0) = 0.3;
    h.at(2) = h.at(-2) = 0.1;
    const auto shifts = first_order_shifts(h, s, lam, 1);
    const auto rec = fourier_from_shift_values(shifts, lam, s, 2);
    const double e0 = std::abs(rec(0) - 0.3), e2 = std::abs(rec(2) - 0.1);
    o.check(e0 <= kC5Tol && e2 <= kC5Tol, fmt("|h0 error| = %.2e, |h2 error| = %.2e <= %.0e", e0, e2, kC5Tol));
    // The e^{-2ns} variant scales h(2) by e^{-4s}.
    const double alt = std::abs(rec(2).real() * std::exp(-4.0 * s) - 0.1);
    o.details.push_back(fmt("       e^{-2ns} variant would give |h2 error| = %.4f (factor e^{4s} = %.3f)", alt,
                            std::exp(4.0 * s)));
  });

  criterion(6, "Example 1 end to end", kC6Runtime,
            [](Outcome& o) { end_to_end(o, "example1", kC6CoeffFrac, false); });

  criterion(7, "Example 2 end to end", kC7Runtime,
            [](Outcome& o) { end_to_end(o, "example2", kC7CoeffFrac, true); });

  criterion(8, "resonance-scan recovery", kC8Runtime, [](Outcome& o) {
    const ExperimentConfig cfg = bundled_config("example1");
    const double s = ProbeGeometry(cfg.d, cfg.r_particle).s();
    const RunResult r = run_pipeline(cfg);
    std::vector<ScanMode> modes;
    std::vector<double> lams;
    for (const auto& c : r.clusters->clusters) {
      if (c.n > cfg.N) break;
      modes.push_back({c.lambda_plus, default_coupling(c.n, true, s)});
      lams.push_back(c.lambda_plus);
    }
    DrudeMaterial sharp = cfg.drude;
    sharp.gamma = 1e-3 * sharp.omega_p;
    const auto scan = resonance_scan(modes, sharp, resonance_grid(lams, sharp, kC8GridPoints));
    o.check(!scan.low_confidence, fmt("gamma = 1e-3 omega_p: %zu peaks for %zu modes, not flagged", scan.peaks.size(),
                                      modes.size()));
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const ScanPeak* best = nullptr;
      for (const auto& p : scan.peaks)
        if (!best || std::abs(p.lambda - lams[i]) < std::abs(best->lambda - lams[i])) best = &p;
      const bool ok = best && std::abs(best->lambda - lams[i]) <= kC8ResolutionFactor * best->lambda_resolution;
      o.check(ok, best ? fmt("n=%zu: lambda %.6e, peak %.6e, |error| %.2e <= 2 x resolution %.2e", i + 1, lams[i],
                             best->lambda, std::abs(best->lambda - lams[i]), best->lambda_resolution)
                       : fmt("n=%zu: no peak", i + 1));
    }
    DrudeMaterial broad = cfg.drude;
    broad.gamma = 0.3 * broad.omega_p;
    const auto wide = resonance_scan(modes, broad, resonance_grid(lams, broad, kC8GridPoints));
    o.check(wide.low_confidence, fmt("gamma = 0.3 omega_p: low confidence flagged (%zu peaks)", wide.peaks.size()));
  });

  criterion(9, "structural invariants (selftest)", kC9Runtime, [](Outcome& o) {
    const auto rep = run_selftest();
    for (const auto& c : rep.checks)
      o.check(c.passed, fmt("%s %s: %.3e <= %.0e", c.config.c_str(), c.name.c_str(), c.value, c.tolerance));
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
