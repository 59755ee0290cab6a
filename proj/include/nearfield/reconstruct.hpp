#pragma once

// Inversion of eigenvalue shifts (even coefficients) and of CGPT differences
// (all coefficients) into the Fourier series of the disk perturbation h.

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nearfield/conformal.hpp"
#include "nearfield/fourier.hpp"
#include "nearfield/spectral.hpp"

namespace nearfield {

/// Even coefficients h^(0), h^(+-2), ..., h^(+-N) from the doublet shifts of
/// clusters n = 1..N/2:
///   h^(0)  = -lambda (lambda1_{+1} + lambda1_{-1}) e^{2s},
///   h^(2n) = -2 lambda^2 (lambda1_{+n} - lambda1_{-n}) e^{2ns} / n.
/// Odd orders are zero: they do not enter the shifts at first order.
/// Throws InputError for odd N, a missing or invalid cluster, or a cluster
/// whose eigenvectors are not of definite parity (h not even).
FourierCoefficients fourier_from_shifts(const SpectralClusters& clusters, double lambda_mp, double s, int N);

/// Same inversion from raw shift values (index n - 1 holds cluster n).
FourierCoefficients fourier_from_shift_values(std::span<const FirstOrderShift> shifts, double lambda_mp, double s,
                                              int N);

/// h^(0) + 2 sum_{k=1}^{N/2} (Re h^(2k) cos 2k theta - Im h^(2k) sin 2k theta).
std::vector<double> synthesize_even(const FourierCoefficients& c, int N, std::span<const double> theta);
/// h^(0) + 2 sum_{k=1}^{N} (Re h^(k) cos k theta - Im h^(k) sin k theta).
std::vector<double> synthesize_full(const FourierCoefficients& c, int N, std::span<const double> theta);

struct PairEstimate {
  int n = 0;
  int m = 0;
  cplx value;  // Delta N2[n, m] / (delta * coefficient(n, m))
};

struct CgptInversion {
  FourierCoefficients coefficients;
  std::vector<std::vector<PairEstimate>> pairs;  // pairs[k + N]: estimates of h^(k)
};

/// Average over all (n, m), 0 < |n|, |m| <= N, m - n = k, of the lemma inverted
/// for h^(k), then h^(k) <- (h^(k) + conj h^(-k)) / 2. delta_table is laid out
/// by SignedBasis of its own order (>= N).
CgptInversion fourier_from_cgpt(const Eigen::MatrixXcd& delta_table, double eps_minus, double eps_plus, double delta,
                                int N);

/// Coefficients restricted to |k| <= N (and to even k when even_only).
FourierCoefficients projection(const FourierCoefficients& c, int N, bool even_only);

std::vector<PlanePoint> reconstruct_plane(std::span<const double> theta, std::span<const double> h_samples,
                                          const ProbeGeometry& geom, double delta, double x_max);

struct ErrorMetrics {
  double rel_l2 = 0.0;
  double rel_linf = 0.0;
};

/// Weighted relative errors; empty weights mean uniform. Throws InputError on
/// length mismatch.
ErrorMetrics error_metrics(std::span<const double> reconstructed, std::span<const double> truth,
                           std::span<const double> weights = {});

/// |a(k) - b(k)| for k = -N..N.
std::vector<double> coefficient_errors(const FourierCoefficients& a, const FourierCoefficients& b, int N);

}  // namespace nearfield
