#include "nearfield/drude.hpp"

#include <algorithm>
#include <cmath>

#include "nearfield/errors.hpp"

namespace nearfield {

namespace {

void check_material(const DrudeMaterial& mat) {
  if (!(mat.eps0 > 0.0)) throw DomainError("DrudeMaterial: eps0 must be positive");
  if (!(mat.omega_p > 0.0)) throw DomainError("DrudeMaterial: omega_p must be positive");
  if (!(mat.gamma >= 0.0)) throw DomainError("DrudeMaterial: gamma must be non-negative");
  if (!(mat.eps_plus > 0.0)) throw DomainError("DrudeMaterial: eps_plus must be positive");
}

}  // namespace

cplx drude_permittivity(double omega, const DrudeMaterial& mat) {
  check_material(mat);
  if (!(omega > 0.0)) throw DomainError("drude_permittivity: omega must be positive");
  return mat.eps0 * (1.0 - mat.omega_p * mat.omega_p / (omega * cplx(omega, mat.gamma)));
}

cplx drude_contrast(double omega, const DrudeMaterial& mat) {
  const cplx eps_c = drude_permittivity(omega, mat);
  return (mat.eps_plus + eps_c) / (2.0 * (mat.eps_plus - eps_c));
}

double resonance_frequency(double lambda, const DrudeMaterial& mat) {
  check_material(mat);
  if (!(std::abs(lambda) < 0.5)) throw DomainError("resonance_frequency: lambda must lie in (-1/2, 1/2)");
  // lambda = (eps_plus + eps_c) / (2 (eps_plus - eps_c))  <=>  eps_c = eps_plus (2 lambda - 1) / (2 lambda + 1).
  const double eps_c = mat.eps_plus * (2.0 * lambda - 1.0) / (2.0 * lambda + 1.0);
  return mat.omega_p / std::sqrt(1.0 - eps_c / mat.eps0);
}

cplx default_coupling(int n, bool even_parity, double s) {
  return (even_parity ? 1.0 : 0.3) * std::exp(-std::abs(n) * s);
}

std::vector<double> resonance_grid(const std::vector<double>& lambdas, const DrudeMaterial& mat, int points,
                                   double pad) {
  if (lambdas.empty()) throw InputError("resonance_grid: no eigenvalues");
  if (points < 3) throw InputError("resonance_grid: need at least 3 points");
  const auto [lo, hi] = std::minmax_element(lambdas.begin(), lambdas.end());
  const double l_lo = std::max(*lo - pad, -0.5 + 1e-6);
  const double l_hi = std::min(*hi + pad, 0.5 - 1e-6);
  const double w_lo = resonance_frequency(l_lo, mat);
  const double w_hi = resonance_frequency(l_hi, mat);
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[i] = w_lo + (w_hi - w_lo) * i / (points - 1);
  return grid;
}

ResonanceScan resonance_scan(const std::vector<ScanMode>& modes, const DrudeMaterial& mat,
                             const std::vector<double>& omega_grid) {
  if (modes.empty()) throw InputError("resonance_scan: no modes");
  if (omega_grid.size() < 3) throw InputError("resonance_scan: grid needs at least 3 points");
  for (std::size_t i = 1; i < omega_grid.size(); ++i)
    if (!(omega_grid[i] > omega_grid[i - 1])) throw InputError("resonance_scan: grid must be strictly increasing");
  for (const auto& m : modes)
    if (m.coupling == cplx{}) throw InputError("resonance_scan: zero coupling for a mode of interest");

  auto response = [&](double omega) {
    const cplx lc = drude_contrast(omega, mat);
    cplx p{};
    for (const auto& m : modes) p += m.coupling / (lc - m.lambda);
    return p;
  };

  ResonanceScan out;
  out.omegas = omega_grid;
  out.response.reserve(omega_grid.size());
  for (double w : omega_grid) out.response.push_back(response(w));

  const std::size_t K = omega_grid.size();
  std::vector<double> mag(K);
  for (std::size_t i = 0; i < K; ++i) mag[i] = std::abs(out.response[i].imag());
  for (std::size_t i = 1; i + 1 < K; ++i) {
    if (!(mag[i] > mag[i - 1] && mag[i] > mag[i + 1])) continue;
    const double w0 = omega_grid[i - 1], w1 = omega_grid[i], w2 = omega_grid[i + 1];
    const double f0 = mag[i - 1], f1 = mag[i], f2 = mag[i + 1];
    // Vertex of the parabola through the three samples (non-uniform spacing allowed).
    const double num = (w1 - w0) * (w1 - w0) * (f1 - f2) - (w1 - w2) * (w1 - w2) * (f1 - f0);
    const double den = (w1 - w0) * (f1 - f2) - (w1 - w2) * (f1 - f0);
    double w = den != 0.0 ? w1 - 0.5 * num / den : w1;
    w = std::clamp(w, w0, w2);
    ScanPeak pk;
    pk.omega = w;
    const cplx lc = drude_contrast(w, mat);
    pk.lambda = lc.real();
    pk.linewidth = std::abs(lc.imag());
    pk.height = std::abs(response(w).imag());
    const double step = 0.5 * (w2 - w0);
    const double dl = (drude_contrast(w + 1e-6 * step, mat).real() - drude_contrast(w - 1e-6 * step, mat).real()) /
                      (2e-6 * step);
    pk.lambda_resolution = std::abs(dl) * step;
    out.peaks.push_back(pk);
  }

  if (out.peaks.size() != modes.size()) {
    out.low_confidence = true;
    out.warnings.push_back("found " + std::to_string(out.peaks.size()) + " peaks for " +
                           std::to_string(modes.size()) + " modes");
  }
  std::vector<double> lam;
  for (const auto& m : modes) lam.push_back(m.lambda);
  std::sort(lam.begin(), lam.end());
  // Resolution scale: the smallest neighbour separation, or |lambda| itself
  // when that is smaller (the peak would be pulled across lambda = 0).
  double min_sep = std::abs(lam.front());
  for (double l : lam) min_sep = std::min(min_sep, std::abs(l));
  for (std::size_t i = 1; i < lam.size(); ++i) min_sep = std::min(min_sep, lam[i] - lam[i - 1]);
  for (const auto& pk : out.peaks) {
    if (pk.linewidth > 0.5 * min_sep) {
      out.low_confidence = true;
      out.warnings.push_back("linewidth exceeds half the mode separation or half of |lambda|");
      break;
    }
  }
  for (std::size_t i = 1; i < out.peaks.size(); ++i) {
    const double spacing = std::abs(out.peaks[i].omega - out.peaks[i - 1].omega);
    const double step = (omega_grid.back() - omega_grid.front()) / static_cast<double>(K - 1);
    if (spacing < 3.0 * step) {
      out.warnings.push_back("grid too coarse: peak spacing below 3 grid steps");
      break;
    }
  }
  return out;
}

}  // namespace nearfield
