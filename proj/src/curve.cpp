#include "nearfield/curve.hpp"

#include <cmath>

#include "nearfield/errors.hpp"

namespace nearfield {

double DiscretizedCurve::signed_area() const {
  // Green: A = 1/2 \oint (x dy - y dx) = 1/2 \oint Im(conj(z) dz).
  double area = 0.0;
  for (int j = 0; j < size(); ++j) area += 0.5 * std::imag(std::conj(nodes(j)) * tangents(j)) * weights(j);
  return area;
}

double DiscretizedCurve::mesh_size() const {
  double h = 0.0;
  for (int j = 0; j < size(); ++j) h = std::max(h, std::abs(nodes((j + 1) % size()) - nodes(j)));
  return h;
}

int DiscretizedCurve::winding_number(cplx p) const {
  double total = 0.0;
  for (int j = 0; j < size(); ++j) total += std::arg((nodes((j + 1) % size()) - p) / (nodes(j) - p));
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

DiscretizedCurve make_curve(int M, const CurveMap& gamma, const CurveMap& dgamma, const CurveMap& ddgamma) {
  if (M < 8) throw InputError("make_curve: need at least 8 nodes");
  DiscretizedCurve c;
  c.nodes.resize(M);
  c.tangents.resize(M);
  c.normals.resize(M);
  c.curvature.resize(M);
  c.speed.resize(M);
  c.weights.resize(M);
  for (int j = 0; j < M; ++j) {
    const double t = 2.0 * kPi * j / M;
    const cplx g = gamma(t), dg = dgamma(t), ddg = ddgamma(t);
    const double v = std::abs(dg);
    if (!(v > 1e-14)) throw GeometryError("make_curve: vanishing speed");
    c.nodes(j) = g;
    c.tangents(j) = dg / v;
    c.normals(j) = cplx(0.0, -1.0) * dg / v;
    c.curvature(j) = std::imag(std::conj(dg) * ddg) / (v * v * v);
    c.speed(j) = v;
    c.weights(j) = v * 2.0 * kPi / M;
  }
  if (!(c.signed_area() > 0.0)) throw GeometryError("make_curve: curve must be counterclockwise");
  return c;
}

DiscretizedCurve make_circle(int M, double radius, cplx center) {
  if (!(radius > 0.0)) throw GeometryError("make_circle: radius must be positive");
  auto c = make_curve(
      M, [=](double t) { return center + std::polar(radius, t); },
      [=](double t) { return cplx(0.0, 1.0) * std::polar(radius, t); }, [=](double t) { return -std::polar(radius, t); });
  c.circle = DiscretizedCurve::Circle{center, radius};
  return c;
}

DiscretizedCurve make_ellipse(int M, double a, double b, cplx center, double angle) {
  if (!(a > 0.0 && b > 0.0)) throw GeometryError("make_ellipse: semi-axes must be positive");
  const cplx rot = std::polar(1.0, angle);
  return make_curve(
      M, [=](double t) { return center + rot * cplx(a * std::cos(t), b * std::sin(t)); },
      [=](double t) { return rot * cplx(-a * std::sin(t), b * std::cos(t)); },
      [=](double t) { return rot * cplx(-a * std::cos(t), -b * std::sin(t)); });
}

DiscretizedCurve make_perturbed_circle(int M, const FourierCoefficients& h, double delta) {
  // gamma = rho e^{it}; gamma' = (rho' + i rho) e^{it}; gamma'' = (rho'' + 2i rho' - rho) e^{it}.
  auto rho = [&](double t, int p) { return (p == 0 ? 1.0 : 0.0) + delta * h.derivative(t, p).real(); };
  auto c = make_curve(
      M, [&](double t) { return rho(t, 0) * std::polar(1.0, t); },
      [&](double t) { return cplx(rho(t, 1), rho(t, 0)) * std::polar(1.0, t); },
      [&](double t) { return cplx(rho(t, 2) - rho(t, 0), 2.0 * rho(t, 1)) * std::polar(1.0, t); });
  if (delta == 0.0 || h.max_order() == 0) {
    const double r0 = 1.0 + delta * h(0).real();
    c.circle = DiscretizedCurve::Circle{cplx{}, r0};
  }
  return c;
}

DiscretizedCurve transform_curve(const DiscretizedCurve& curve, double angle, cplx shift) {
  const cplx rot = std::polar(1.0, angle);
  DiscretizedCurve out = curve;
  out.nodes = (curve.nodes * rot).array() + shift;
  out.tangents = curve.tangents * rot;
  out.normals = curve.normals * rot;
  if (curve.circle) out.circle = DiscretizedCurve::Circle{shift + rot * curve.circle->center, curve.circle->radius};
  return out;
}

}  // namespace nearfield
