#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nearfield {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Fourier coefficients c(k), |k| <= max_order, of a 2*pi-periodic function
/// f(theta) = sum_k c(k) e^{i k theta}. Out-of-range orders read as zero.
class FourierCoefficients {
 public:
  FourierCoefficients() = default;
  explicit FourierCoefficients(int max_order);

  int max_order() const { return max_order_; }

  cplx operator()(int k) const;
  cplx& at(int k);

  /// Largest |c(k) - conj(c(-k))| over all stored orders.
  double conjugation_defect() const;
  /// Largest |Im c(k)|.
  double max_imag() const;
  /// Copy restricted to |k| <= order (padded with zeros if order is larger).
  FourierCoefficients truncated(int order) const;

  /// Evaluate the (possibly complex) series at theta.
  cplx evaluate(double theta) const;
  /// p-th derivative of the series at theta.
  cplx derivative(double theta, int p) const;

 private:
  int max_order_ = 0;
  std::vector<cplx> data_{cplx{}};
};

/// Uniform periodic grid theta_j = 2 pi j / M.
std::vector<double> uniform_theta_grid(int M);

/// Discrete Fourier analysis of samples on the uniform grid. For even M the
/// Nyquist value is split evenly between k = +M/2 and k = -M/2, so that the
/// returned series interpolates the samples exactly.
FourierCoefficients dft(std::span<const double> samples);
FourierCoefficients dft(std::span<const cplx> samples);

/// Exponential spectral filter c(k) exp(-alpha (|k| / cutoff)^order) for
/// |k| <= cutoff, zero beyond. alpha = 36 brings the cutoff mode to machine
/// precision while leaving |k| << cutoff essentially untouched.
FourierCoefficients exponential_filter(const FourierCoefficients& c, int cutoff, int order = 8, double alpha = 36.0);

/// Real part of the series evaluated on arbitrary angles.
std::vector<double> synthesize_real(const FourierCoefficients& c, std::span<const double> theta);

/// Index map for the signed Fourier basis {-N..-1, 1..N}.
class SignedBasis {
 public:
  explicit SignedBasis(int order) : order_(order) {}
  int order() const { return order_; }
  int size() const { return 2 * order_; }
  /// Position of signed index n (n != 0, |n| <= order).
  int index(int n) const { return n < 0 ? n + order_ : n + order_ - 1; }
  /// Signed index stored at position i.
  int mode(int i) const { return i < order_ ? i - order_ : i - order_ + 1; }

 private:
  int order_;
};

}  // namespace nearfield
