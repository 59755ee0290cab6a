#include "nearfield/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "nearfield/errors.hpp"

namespace nearfield {

namespace {

constexpr double kPoleThreshold = 1e-10;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double compute_modulus(double d, double r) {
  if (!(r > 0.0) || !(d > r)) throw DomainError("compute_modulus: need d > r > 0");
  return std::log((d + std::sqrt(d * d - r * r)) / r);
}

ProbeGeometry::ProbeGeometry(double d, double r_particle)
    : d_(d), r_(r_particle), c_(0.0), s_(compute_modulus(d, r_particle)) {
  c_ = std::sqrt(d * d - r_particle * r_particle);
}

cplx mobius_forward(cplx z, const ProbeGeometry& geom) {
  const cplx ic(0.0, geom.c());
  const cplx den = z - ic;
  if (std::abs(den) < kPoleThreshold * std::max(1.0, geom.c())) throw PoleError("mobius_forward: z is at the pole i c");
  return (z + ic) / den;
}

cplx mobius_inverse(cplx zeta, const ProbeGeometry& geom) {
  const cplx den = zeta - 1.0;
  if (std::abs(den) < kPoleThreshold) throw PoleError("mobius_inverse: zeta = 1 is the image of infinity");
  return cplx(0.0, geom.c()) * (zeta + 1.0) / den;
}

// ---------------------------------------------------------------------------

PlaneProfile::PlaneProfile(ProfileShape shape, double support_radius, double delta, bool even_symmetric)
    : shape_(std::move(shape)), support_radius_(support_radius), delta_(delta), even_symmetric_(even_symmetric) {
  if (!(support_radius > 0.0)) throw DomainError("PlaneProfile: support radius must be positive");
  if (!(delta >= 0.0)) throw DomainError("PlaneProfile: amplitude delta must be >= 0");
  std::visit(Overloaded{
                 [](const PiecewiseConstant& p) {
                   for (const auto& [a, b] : p.intervals)
                     if (!(a <= b)) throw DomainError("PlaneProfile: interval with left > right");
                 },
                 [](const GaussianBumps& g) {
                   if (g.centers.size() != g.widths.size() || g.centers.size() != g.amplitudes.size())
                     throw DomainError("PlaneProfile: gaussian parameter lists differ in length");
                   for (double w : g.widths)
                     if (!(w > 0.0)) throw DomainError("PlaneProfile: gaussian width must be positive");
                 },
                 [](const Tabulated& t) {
                   if (t.x.size() != t.y.size() || t.x.size() < 2)
                     throw DomainError("PlaneProfile: table needs >= 2 (x, y) pairs");
                   if (!std::is_sorted(t.x.begin(), t.x.end()) ||
                       std::adjacent_find(t.x.begin(), t.x.end()) != t.x.end())
                     throw DomainError("PlaneProfile: table abscissae must be strictly increasing");
                 },
             },
             shape_);
  if (even_symmetric_) {
    // Offsets chosen off any plausible breakpoint.
    for (int i = 0; i < 257; ++i) {
      const double x = support_radius_ * (i + 0.318309886) / 257.0;
      if (std::abs(evaluate(x) - evaluate(-x)) > 1e-12 * std::max(1.0, max_abs()))
        throw DomainError("PlaneProfile: declared even but h0(x) != h0(-x)");
    }
  }
}

PlaneProfile PlaneProfile::flat() { return PlaneProfile(PiecewiseConstant{}, 1.0, 0.0, true); }

double PlaneProfile::evaluate_shape(double x) const {
  return std::visit(Overloaded{
                        [x](const PiecewiseConstant& p) {
                          for (const auto& [a, b] : p.intervals)
                            if (x >= a && x <= b) return p.value;
                          return 0.0;
                        },
                        [x](const GaussianBumps& g) {
                          double sum = 0.0;
                          for (std::size_t k = 0; k < g.centers.size(); ++k) {
                            const double u = (x - g.centers[k]) / g.widths[k];
                            sum += g.amplitudes[k] * std::exp(-u * u);
                          }
                          return sum;
                        },
                        [x](const Tabulated& t) {
                          if (x < t.x.front() || x > t.x.back()) return 0.0;
                          const auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
                          if (it == t.x.end()) return t.y.back();
                          const auto i = static_cast<std::size_t>(it - t.x.begin());
                          const double w = (x - t.x[i - 1]) / (t.x[i] - t.x[i - 1]);
                          return (1.0 - w) * t.y[i - 1] + w * t.y[i];
                        },
                    },
                    shape_);
}

double PlaneProfile::evaluate(double x) const {
  if (std::abs(x) > support_radius_) return 0.0;
  return evaluate_shape(x);
}

double PlaneProfile::max_abs() const {
  return std::visit(Overloaded{
                        [](const PiecewiseConstant& p) { return p.intervals.empty() ? 0.0 : std::abs(p.value); },
                        [](const GaussianBumps& g) {
                          double sum = 0.0;
                          for (double a : g.amplitudes) sum += std::abs(a);
                          return sum;
                        },
                        [](const Tabulated& t) {
                          double m = 0.0;
                          for (double y : t.y) m = std::max(m, std::abs(y));
                          return m;
                        },
                    },
                    shape_);
}

std::vector<double> PlaneProfile::breakpoints() const {
  std::vector<double> out{-support_radius_, support_radius_};
  if (const auto* p = std::get_if<PiecewiseConstant>(&shape_)) {
    for (const auto& [a, b] : p->intervals) {
      out.push_back(a);
      out.push_back(b);
    }
  } else if (const auto* t = std::get_if<Tabulated>(&shape_)) {
    out.push_back(t->x.front());
    out.push_back(t->x.back());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string PlaneProfile::kind() const {
  return std::visit(Overloaded{
                        [](const PiecewiseConstant&) { return std::string("piecewise_constant"); },
                        [](const GaussianBumps&) { return std::string("gaussian_bumps"); },
                        [](const Tabulated&) { return std::string("tabulated"); },
                    },
                    shape_);
}

// ---------------------------------------------------------------------------

DiskPerturbation DiskPerturbation::from_samples(std::vector<double> samples, double delta) {
  DiskPerturbation out;
  out.theta = uniform_theta_grid(static_cast<int>(samples.size()));
  out.fourier = dft(std::span<const double>(samples));
  out.samples = std::move(samples);
  out.delta = delta;
  return out;
}

DiskPerturbation DiskPerturbation::from_coefficients(const FourierCoefficients& c, double delta, int M) {
  auto theta = uniform_theta_grid(M);
  return from_samples(synthesize_real(c, theta), delta);
}

namespace {

// Preimage under Phi of the ray {t e^{i theta} : t > 0}.
cplx ray_preimage(double t, double theta, double c) {
  const cplx w = std::polar(t, theta);
  return cplx(0.0, c) * (w + 1.0) / (w - 1.0);
}

// Ray parameter at which the preimage reaches height y (|y| < c):
// Im z = c (t^2 - 1) / |t e^{i theta} - 1|^2.
double ray_parameter_at_height(double y, double theta, double c) {
  const double cs = std::cos(theta);
  return (-y * cs + std::sqrt(y * y * cs * cs + c * c - y * y)) / (c - y);
}

struct RayScan {
  bool touches_support = false;
  // Brackets [t_k, t_{k+1}] of the scan containing a sign change of the gap.
  std::vector<std::pair<double, double>> brackets;
};

RayScan scan_ray(const PlaneProfile& profile, double theta, double c, double t_lo, double t_hi) {
  constexpr int kScan = 64;
  RayScan out;
  double previous = 0.0, t_prev = t_lo;
  for (int i = 0; i <= kScan; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / kScan;
    const cplx z = ray_preimage(t, theta, c);
    if (std::abs(z.real()) <= profile.support_radius()) out.touches_support = true;
    const double g = z.imag() - profile.delta() * profile.evaluate(z.real());
    if (i > 0 && (g > 0.0) != (previous > 0.0)) out.brackets.emplace_back(t_prev, t);
    previous = g;
    t_prev = t;
  }
  return out;
}

// half_cell: half the angular grid spacing. A ray that meets a vertical step
// more than once is accepted when rays a quarter cell to either side meet the
// boundary once; the violation is then narrower than the grid resolves and the
// outermost crossing is used.
double radial_perturbation_along_ray(const PlaneProfile& profile, double theta, double c, double half_cell) {
  const double delta = profile.delta();
  const double amplitude = delta * profile.max_abs();
  if (amplitude == 0.0) return 0.0;
  if (amplitude >= 0.5 * c)
    throw StarShapeError("pushforward_profile: perturbation height comparable to the pole distance c");

  const double y_bound = 1.5 * amplitude;
  auto bounds = [&](double th) {
    return std::pair{ray_parameter_at_height(-y_bound, th, c), ray_parameter_at_height(y_bound, th, c)};
  };
  auto [t_lo, t_hi] = bounds(theta);
  const RayScan scan = scan_ray(profile, theta, c, t_lo, t_hi);
  if (!scan.touches_support) return 0.0;
  if (scan.brackets.size() != 1) {
    bool resolved = scan.brackets.size() % 2 == 1;
    for (double side : {-0.5, 0.5}) {
      const double th = theta + side * half_cell;
      const auto [a, b] = bounds(th);
      if (resolved && scan_ray(profile, th, c, a, b).brackets.size() != 1) resolved = false;
    }
    if (!resolved)
      throw StarShapeError("pushforward_profile: ray meets the perturbed boundary " +
                           std::to_string(scan.brackets.size()) + " times; image is not star-shaped about the origin");
  }
  std::tie(t_lo, t_hi) = scan.brackets.back();

  auto gap = [&](double t) {
    const cplx z = ray_preimage(t, theta, c);
    return z.imag() - delta * profile.evaluate(z.real());
  };
  for (int it = 0; it < 200 && t_hi - t_lo > 4.0 * std::numeric_limits<double>::epsilon(); ++it) {
    const double mid = 0.5 * (t_lo + t_hi);
    (gap(mid) > 0.0 ? t_hi : t_lo) = mid;
  }
  return (0.5 * (t_lo + t_hi) - 1.0) / delta;
}

}  // namespace

DiskPerturbation pushforward_profile(const PlaneProfile& profile, const ProbeGeometry& geom, int M) {
  if (M < 4) throw InputError("pushforward_profile: need at least 4 nodes");
  std::vector<double> samples(static_cast<std::size_t>(M), 0.0);
  if (profile.delta() > 0.0) {
    for (int j = 1; j < M; ++j)
      samples[static_cast<std::size_t>(j)] = radial_perturbation_along_ray(profile, 2.0 * kPi * j / M, geom.c(), kPi / M);
  }
  return DiskPerturbation::from_samples(std::move(samples), profile.delta());
}

PlanePoint pullback_point(double theta, double radial_perturbation, double delta, const ProbeGeometry& geom) {
  const cplx zeta = std::polar(1.0 + delta * radial_perturbation, theta);
  const cplx z = mobius_inverse(zeta, geom);
  return {z.real(), z.imag()};
}

std::vector<PlanePoint> pullback_curve(std::span<const double> theta, std::span<const double> h, double delta,
                                       const ProbeGeometry& geom, double x_max) {
  if (theta.size() != h.size()) throw InputError("pullback_curve: theta and h differ in length");
  // Only the arc around theta = pi that the window [-x_max, x_max] maps to;
  // near theta = 0 a radial offset sends points to infinity along the axis.
  const double half_arc = std::abs(kPi - std::abs(std::arg(mobius_forward(cplx(x_max, 0.0), geom))));
  std::vector<PlanePoint> out;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double offset = std::abs(std::remainder(theta[j] - kPi, 2.0 * kPi));
    if (offset > 1.05 * half_arc) continue;
    const cplx zeta = std::polar(1.0 + delta * h[j], theta[j]);
    if (std::abs(zeta - 1.0) < 1e-8) continue;  // image of infinity
    const PlanePoint p = pullback_point(theta[j], h[j], delta, geom);
    if (std::abs(p.x) <= x_max) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const PlanePoint& a, const PlanePoint& b) { return a.x < b.x; });
  return out;
}

std::vector<PlanePoint> pullback_curve(const DiskPerturbation& h, const ProbeGeometry& geom, double x_max) {
  return pullback_curve(h.theta, h.samples, h.delta, geom, x_max);
}

std::vector<double> resample_plane(const std::vector<PlanePoint>& curve, std::span<const double> x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (double xq : x) {
    if (curve.empty() || xq < curve.front().x || xq > curve.back().x) {
      out.push_back(0.0);
      continue;
    }
    auto it = std::lower_bound(curve.begin(), curve.end(), xq, [](const PlanePoint& p, double v) { return p.x < v; });
    if (it == curve.begin()) {
      out.push_back(it->height);
      continue;
    }
    const auto& b = *it;
    const auto& a = *(it - 1);
    const double w = b.x > a.x ? (xq - a.x) / (b.x - a.x) : 0.0;
    out.push_back((1.0 - w) * a.height + w * b.height);
  }
  return out;
}

}  // namespace nearfield
