#include "nearfield/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "nearfield/conformal.hpp"
#include "nearfield/gpt.hpp"
#include "nearfield/layer_potentials.hpp"
#include "nearfield/pipeline.hpp"

namespace nearfield {

namespace {

constexpr double kMobiusTol = 1e-12;
constexpr double kSymmetryTol = 1e-8;
constexpr double kAdjointTol = 1e-8;
constexpr double kSpectrumTol = 1e-6;
constexpr double kConjugationTol = 1e-12;

double mobius_defect(const ProbeGeometry& g) {
  double worst = 0.0;
  for (int k = 0; k < 32; ++k) {
    const double t = 2.0 * kPi * k / 32.0;
    // Real axis -> unit circle.
    const double x = 3.0 * std::tan(0.49 * (t - kPi));
    worst = std::max(worst, std::abs(std::abs(mobius_forward(cplx(x, 0.0), g)) - 1.0));
    // Particle boundary -> circle of radius e^s.
    const cplx z = cplx(0.0, g.d()) + g.r_particle() * std::polar(1.0, t);
    worst = std::max(worst, std::abs(std::abs(mobius_forward(z, g)) - std::exp(g.s())) / std::exp(g.s()));
    // Round trip away from the poles.
    const cplx w = 0.7 * std::polar(1.0, t);
    worst = std::max(worst, std::abs(mobius_forward(mobius_inverse(w, g), g) - w));
  }
  return worst;
}

Eigen::VectorXcd zero_mean_density(const DiscretizedCurve& c, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::VectorXcd f(c.size());
  for (int j = 0; j < c.size(); ++j) f(j) = cplx(nd(rng), nd(rng));
  const cplx mean = c.integrate(f) / c.weights.sum();
  f.array() -= mean;
  return f;
}

}  // namespace

bool SelfTestReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const SelfTestCheck& c) { return c.passed; });
}

SelfTestReport run_selftest(const ExperimentConfig& cfg) {
  SelfTestReport rep;
  auto add = [&](const std::string& name, double value, double tol) {
    rep.checks.push_back({cfg.name, name, value <= tol, value, tol});
  };
  const ProbeGeometry geom(cfg.d, cfg.r_particle);
  add("mobius identities", mobius_defect(geom), kMobiusTol);

  const auto h = pushforward_profile(cfg.profile, geom, cfg.M);
  add("fourier conjugation symmetry", h.fourier.conjugation_defect() / std::max(1.0, std::abs(h.fourier(0))),
      kConjugationTol);

  const auto curve = perturbed_boundary(cfg.M, h.fourier, cfg.profile.delta(), cfg.geometry_cutoff);
  const double lam = contrast(cfg.eps_minus, cfg.eps_plus).real();
  const auto cgpt = compute_cgpt(curve, lam, cfg.N_mat);
  add("cgpt symmetry", (cgpt.Mcc - cgpt.Mcc.transpose()).cwiseAbs().maxCoeff() / cgpt.Mcc.cwiseAbs().maxCoeff(),
      kSymmetryTol);

  const Eigen::MatrixXd K = np_star_matrix(curve);
  const Eigen::MatrixXd S = single_layer_kress_matrix(curve);
  std::mt19937_64 rng(cfg.seed);
  double adj = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const Eigen::VectorXcd phi = zero_mean_density(curve, rng), psi = zero_mean_density(curve, rng);
    const Eigen::VectorXcd Kphi = K * phi, Kpsi = K * psi;
    const cplx lhs = hstar_inner(phi, Kpsi, curve, S), rhs = hstar_inner(Kphi, psi, curve, S);
    const double scale = std::sqrt(std::abs(hstar_inner(phi, phi, curve, S)) * std::abs(hstar_inner(psi, psi, curve, S)));
    adj = std::max(adj, std::abs(lhs - rhs) / scale);
  }
  add("K* self-adjoint in H*", adj, kAdjointTol);

  const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(K, false).eigenvalues();
  add("K* spectrum within [-1/2, 1/2]", std::max(0.0, ev.cwiseAbs().maxCoeff() - 0.5), kSpectrumTol);
  return rep;
}

SelfTestReport run_selftest() {
  SelfTestReport all;
  for (const auto& name : bundled_config_names()) {
    const auto r = run_selftest(bundled_config(name));
    all.checks.insert(all.checks.end(), r.checks.begin(), r.checks.end());
  }
  return all;
}

}  // namespace nearfield
