#pragma once

// Dispersive particle permittivity and the simulated frequency scan.
//
//   eps_c(omega) = eps0 (1 - omega_p^2 / (omega (omega + i gamma))),
//   lambda_{+c}(omega) = (eps_plus + eps_c) / (2 (eps_plus - eps_c)),
//   p(omega) = sum_n c_n / (lambda_{+c}(omega) - lambda_n).

#include <string>
#include <vector>

#include "nearfield/fourier.hpp"

namespace nearfield {

struct DrudeMaterial {
  double eps0 = 1.0;
  double omega_p = 1.0;
  double gamma = 0.0;
  double eps_plus = 1.0;
};

/// Throws DomainError for omega <= 0 or invalid material parameters.
cplx drude_permittivity(double omega, const DrudeMaterial& mat);
cplx drude_contrast(double omega, const DrudeMaterial& mat);

/// Frequency at which the lossless contrast equals lambda, lambda in (-1/2, 1/2).
double resonance_frequency(double lambda, const DrudeMaterial& mat);

struct ScanMode {
  double lambda = 0.0;
  cplx coupling{1.0, 0.0};
};

/// c_n = e^{-|n| s} for even modes, 0.3 e^{-|n| s} for odd ones.
cplx default_coupling(int n, bool even_parity, double s);

struct ScanPeak {
  double omega = 0.0;    // refined peak frequency
  double lambda = 0.0;   // Re lambda_{+c}(omega)
  double height = 0.0;   // |Im p| at the refined peak
  double linewidth = 0.0;       // Im lambda_{+c}(omega) at the peak
  double lambda_resolution = 0.0;  // |d Re lambda_{+c}/d omega| times the local grid step
};

struct ResonanceScan {
  std::vector<double> omegas;
  std::vector<cplx> response;
  std::vector<ScanPeak> peaks;
  bool low_confidence = false;
  std::vector<std::string> warnings;
};

/// Peaks are strict local maxima of |Im p| (Im p is negative at a lossy
/// resonance), refined by a three-point parabola. The scan is flagged low
/// confidence when the peak count differs from the number of modes or the
/// linewidth (half width Im lambda_{+c}) exceeds half the smallest mode
/// separation or half the smallest |lambda_n|.
ResonanceScan resonance_scan(const std::vector<ScanMode>& modes, const DrudeMaterial& mat,
                             const std::vector<double>& omega_grid);

/// Uniform grid covering the lossless resonance frequencies of the given
/// eigenvalues, padded by `pad` in lambda on either side.
std::vector<double> resonance_grid(const std::vector<double>& lambdas, const DrudeMaterial& mat, int points,
                                   double pad = 0.02);

}  // namespace nearfield
