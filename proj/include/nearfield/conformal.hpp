#pragma once

// Particle/half-plane geometry and the Moebius map that turns it into two
// concentric circles:
//
//   Phi(z) = (z + i c) / (z - i c),   c = sqrt(d^2 - r^2).
//
// Phi sends the real axis onto the unit circle, the lower half-plane into the
// unit disk, and the exterior of the particle |z - i d| > r onto |zeta| < e^s.

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nearfield/fourier.hpp"

namespace nearfield {

/// Particle of radius r_particle centred at (0, d) above the plane x2 = 0.
class ProbeGeometry {
 public:
  ProbeGeometry(double d, double r_particle = 1.0);

  double d() const { return d_; }
  double r_particle() const { return r_; }
  /// Focal distance sqrt(d^2 - r^2); the poles of Phi are +-i c.
  double c() const { return c_; }
  /// Conformal modulus: log of the radius of the particle's image circle.
  double s() const { return s_; }

 private:
  double d_, r_, c_, s_;
};

/// s = ln((d + sqrt(d^2 - r^2)) / r); sinh(s) = sqrt((d/r)^2 - 1).
double compute_modulus(double d, double r);

cplx mobius_forward(cplx z, const ProbeGeometry& geom);
cplx mobius_inverse(cplx zeta, const ProbeGeometry& geom);

struct PiecewiseConstant {
  std::vector<std::pair<double, double>> intervals;
  double value = 0.0;
};

struct GaussianBumps {
  std::vector<double> centers;
  std::vector<double> widths;
  std::vector<double> amplitudes;
};

/// Linear interpolation between samples; zero outside the table.
struct Tabulated {
  std::vector<double> x;
  std::vector<double> y;
};

using ProfileShape = std::variant<PiecewiseConstant, GaussianBumps, Tabulated>;

/// Surface perturbation h0 of the plane: the perturbed boundary is
/// {(x, delta * h0(x))}. h0 is forced to zero outside [-R, R].
class PlaneProfile {
 public:
  PlaneProfile(ProfileShape shape, double support_radius, double delta, bool even_symmetric);

  /// Flat plane (h0 == 0).
  static PlaneProfile flat();

  double evaluate(double x) const;
  /// Upper bound on |h0| over the real line.
  double max_abs() const;

  const ProfileShape& shape() const { return shape_; }
  double support_radius() const { return support_radius_; }
  double delta() const { return delta_; }
  bool even_symmetric() const { return even_symmetric_; }
  /// Abscissae where h0 may jump (interval ends, table ends, +-R).
  std::vector<double> breakpoints() const;
  std::string kind() const;

 private:
  double evaluate_shape(double x) const;

  ProfileShape shape_;
  double support_radius_;
  double delta_;
  bool even_symmetric_;
};

/// Perturbation of the unit circle {(1 + delta h(theta)) e^{i theta}} sampled
/// on the uniform grid theta_j = 2 pi j / M.
struct DiskPerturbation {
  std::vector<double> theta;
  std::vector<double> samples;
  FourierCoefficients fourier;
  double delta = 0.0;

  int size() const { return static_cast<int>(samples.size()); }
  static DiskPerturbation from_samples(std::vector<double> samples, double delta);
  static DiskPerturbation from_coefficients(const FourierCoefficients& c, double delta, int M);
};

/// Image of the perturbed plane under Phi, expressed as a radial perturbation
/// of the unit circle. For each grid angle the ray from the origin is followed
/// back through Phi^{-1} and intersected with the perturbed boundary (vertical
/// steps of piecewise-constant profiles included), so the samples are exact up
/// to the bisection tolerance.
DiskPerturbation pushforward_profile(const PlaneProfile& profile, const ProbeGeometry& geom, int M);

struct PlanePoint {
  double x;
  double height;  // delta * h0(x)
};

/// Plane point corresponding to the disk boundary point at angle theta.
/// Throws PoleError when the point is numerically at zeta = 1.
PlanePoint pullback_point(double theta, double radial_perturbation, double delta, const ProbeGeometry& geom);

/// Pull a sampled disk perturbation back to the plane, keeping |x| <= x_max.
/// Output is sorted by x.
std::vector<PlanePoint> pullback_curve(std::span<const double> theta, std::span<const double> h, double delta,
                                       const ProbeGeometry& geom, double x_max);
std::vector<PlanePoint> pullback_curve(const DiskPerturbation& h, const ProbeGeometry& geom, double x_max);

/// Piecewise-linear resampling of a pulled-back curve onto the abscissae x.
std::vector<double> resample_plane(const std::vector<PlanePoint>& curve, std::span<const double> x);

}  // namespace nearfield
