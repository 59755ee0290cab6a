#pragma once

// Contracted generalized polarization tensors of a domain D with contrast
// lambda_D, built from the harmonic polynomials P_m(x) = (x1 + i x2)^m:
//
//   M^{cc}_{mn} = \int Re P_n (lambda_D I - K*)^{-1}[d Re P_m / dnu] dsigma, etc.
//
// and their complex combinations N^{(1)}, N^{(2)}.

#include <Eigen/Dense>

#include "nearfield/curve.hpp"
#include "nearfield/fourier.hpp"

namespace nearfield {

struct CGPTSet {
  int order = 0;
  cplx lambda;
  // Indexed (source - 1, receiver - 1), i.e. Mcc(m-1, n-1) = M^{cc}_{mn}.
  Eigen::MatrixXcd Mcc, Mcs, Msc, Mss;
  // N1(n-1, m-1) = N^{(1)}_{nm}, N2(n-1, m-1) = N^{(2)}_{nm} (first index = source).
  Eigen::MatrixXcd N1, N2;
  /// N2_signed(idx(n), idx(m)) = \int r^{|m|} e^{-im theta} (lambda I - K*)^{-1}[d(r^{|n|} e^{in theta})/dnu],
  /// n, m in {-N..-1, 1..N} laid out by SignedBasis(order).
  Eigen::MatrixXcd N2_signed;

  cplx n2_signed(int n, int m) const;
};

/// Throws DomainError when the curve does not enclose the origin or the
/// contrast is inadmissible.
CGPTSet compute_cgpt(const DiscretizedCurve& curve, cplx lambda_D, int order);

/// Elementwise N2_signed(perturbed) - N2_signed(reference).
Eigen::MatrixXcd cgpt_delta(const CGPTSet& perturbed, const CGPTSet& reference);

/// 2 pi (eps_D |nm| + eps_0 nm) / ((eps_D - eps_0) lambda_D^2): the factor
/// multiplying delta * h^(m - n) in the first-order change of N2_signed[n, m]
/// for a radially perturbed unit disk.
double shape_derivative_coefficient(double eps_D, double eps_0, int n, int m);

/// First-order predicted change of N2_signed[n, m] between the perturbed and
/// the unit disk.
cplx shape_derivative_prediction(double eps_D, double eps_0, double delta, const FourierCoefficients& h, int n, int m);

}  // namespace nearfield
