#pragma once

#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "nearfield/fourier.hpp"

namespace nearfield {

/// Closed, counterclockwise, smooth planar curve sampled at M equispaced
/// parameter values t_j = 2 pi j / M. Points and vectors are stored as
/// complex numbers x + i y.
struct DiscretizedCurve {
  Eigen::VectorXcd nodes;
  Eigen::VectorXcd tangents;  // unit
  Eigen::VectorXcd normals;   // unit, outward
  Eigen::VectorXd curvature;  // > 0 on convex arcs
  Eigen::VectorXd speed;      // |gamma'(t_j)|
  Eigen::VectorXd weights;    // speed * 2 pi / M, the discrete arclength element

  /// Set when the curve is an exact circle; enables Fourier-analytic
  /// on-boundary single layers.
  struct Circle {
    cplx center;
    double radius;
  };
  std::optional<Circle> circle;

  int size() const { return static_cast<int>(nodes.size()); }
  double perimeter() const { return weights.sum(); }
  double signed_area() const;
  /// Largest distance between consecutive nodes.
  double mesh_size() const;
  /// Winding number of the curve about the point p.
  int winding_number(cplx p) const;
  /// Integral of f against the arclength element.
  cplx integrate(const Eigen::VectorXcd& f) const { return (weights.array() * f.array()).sum(); }
};

using CurveMap = std::function<cplx(double)>;

/// Sample a parametrization gamma with its first two derivatives. Throws
/// GeometryError on clockwise orientation or degenerate speed.
DiscretizedCurve make_curve(int M, const CurveMap& gamma, const CurveMap& dgamma, const CurveMap& ddgamma);

DiscretizedCurve make_circle(int M, double radius, cplx center = {});

/// Ellipse with semi-axes a, b rotated by angle.
DiscretizedCurve make_ellipse(int M, double a, double b, cplx center = {}, double angle = 0.0);

/// Radial perturbation of the unit circle rho(theta) = 1 + delta * h(theta),
/// with h given by its Fourier series (real-valued part is used).
DiscretizedCurve make_perturbed_circle(int M, const FourierCoefficients& h, double delta);

/// Rigid motion z -> center + e^{i angle} z applied to a discretized curve.
DiscretizedCurve transform_curve(const DiscretizedCurve& curve, double angle, cplx shift);

}  // namespace nearfield
