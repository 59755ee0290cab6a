#include "nearfield/layer_potentials.hpp"

#include <cmath>
#include <limits>

#include "nearfield/errors.hpp"

namespace nearfield {

namespace {

constexpr double kInvTwoPi = 1.0 / (2.0 * kPi);

double inner(cplx a, cplx b) { return std::real(a * std::conj(b)); }

}  // namespace

Eigen::MatrixXd np_star_matrix(const DiscretizedCurve& curve) {
  const int M = curve.size();
  Eigen::MatrixXd K(M, M);
  for (int i = 0; i < M; ++i) {
    const cplx x = curve.nodes(i);
    const cplx nu = curve.normals(i);
    for (int j = 0; j < M; ++j) {
      if (i == j) {
        K(i, i) = curve.curvature(i) * curve.weights(i) / (4.0 * kPi);
        continue;
      }
      const cplx r = x - curve.nodes(j);
      const double r2 = std::norm(r);
      if (r2 < 1e-28) throw GeometryError("np_star_matrix: coincident nodes");
      K(i, j) = inner(r, nu) * kInvTwoPi / r2 * curve.weights(j);
    }
  }
  return K;
}

ResolventSolver::ResolventSolver(const DiscretizedCurve& curve, cplx lambda, bool allow_interior)
    : lambda_(lambda), kstar_(np_star_matrix(curve)) {
  if (!allow_interior && lambda.imag() == 0.0 && std::abs(lambda.real()) <= 0.5)
    throw DomainError("ResolventSolver: real contrast must satisfy |lambda| > 1/2");
  const int M = curve.size();
  Eigen::MatrixXcd A = -kstar_.cast<cplx>();
  A.diagonal().array() += lambda;
  lu_.compute(A);
  if (!(lu_.rcond() > 1e-13))
    throw SingularSystemError("ResolventSolver: lambda I - K* is singular to working precision");
  (void)M;
}

Eigen::VectorXcd ResolventSolver::solve(const Eigen::VectorXcd& rhs) const {
  if (rhs.size() != kstar_.rows()) throw InputError("ResolventSolver: right-hand side has wrong size");
  return lu_.solve(rhs);
}

Eigen::VectorXcd solve_second_kind(cplx lambda, const DiscretizedCurve& curve, const Eigen::VectorXcd& rhs) {
  return ResolventSolver(curve, lambda).solve(rhs);
}

OffBoundaryValues single_layer_offboundary(const DiscretizedCurve& curve, const Eigen::VectorXcd& phi,
                                           const Eigen::VectorXcd& targets) {
  if (phi.size() != curve.size()) throw InputError("single_layer_offboundary: density size mismatch");
  OffBoundaryValues out;
  out.values = Eigen::VectorXcd::Zero(targets.size());
  const double h = curve.mesh_size();
  for (int t = 0; t < targets.size(); ++t) {
    cplx sum{};
    double closest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < curve.size(); ++j) {
      const double r = std::abs(targets(t) - curve.nodes(j));
      closest = std::min(closest, r);
      sum += std::log(r) * phi(j) * curve.weights(j);
    }
    if (closest < h) out.near_targets.push_back(t);
    out.values(t) = sum * kInvTwoPi;
  }
  return out;
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> single_layer_gradient(const DiscretizedCurve& curve,
                                                                   const Eigen::VectorXcd& phi,
                                                                   const Eigen::VectorXcd& targets) {
  Eigen::VectorXcd gx = Eigen::VectorXcd::Zero(targets.size());
  Eigen::VectorXcd gy = Eigen::VectorXcd::Zero(targets.size());
  for (int t = 0; t < targets.size(); ++t) {
    for (int j = 0; j < curve.size(); ++j) {
      const cplx r = targets(t) - curve.nodes(j);
      const double r2 = std::norm(r);
      const cplx q = phi(j) * curve.weights(j) * kInvTwoPi / r2;
      gx(t) += r.real() * q;
      gy(t) += r.imag() * q;
    }
  }
  return {gx, gy};
}

Eigen::MatrixXd single_layer_normal_derivative_matrix(const DiscretizedCurve& source, const DiscretizedCurve& target) {
  Eigen::MatrixXd G(target.size(), source.size());
  for (int i = 0; i < target.size(); ++i) {
    for (int j = 0; j < source.size(); ++j) {
      const cplx r = target.nodes(i) - source.nodes(j);
      const double r2 = std::norm(r);
      if (r2 < 1e-28) throw GeometryError("single_layer_normal_derivative_matrix: curves intersect");
      G(i, j) = inner(r, target.normals(i)) * kInvTwoPi / r2 * source.weights(j);
    }
  }
  return G;
}

RadialMultiplier circle_singlelayer_fourier(int n, double r0, double r, Side side) {
  if (n == 0) throw InputError("circle_singlelayer_fourier: n = 0 is not a harmonic mode");
  if (!(r0 > 0.0) || !(r > 0.0)) throw DomainError("circle_singlelayer_fourier: radii must be positive");
  const int k = std::abs(n);
  if (side == Side::Interior) {
    if (r > r0 * (1.0 + 1e-14)) throw DomainError("circle_singlelayer_fourier: interior side needs r <= r0");
    const double q = r / r0;
    return {-r0 / (2.0 * k) * std::pow(q, k), -0.5 * std::pow(q, k - 1)};
  }
  if (r < r0 * (1.0 - 1e-14)) throw DomainError("circle_singlelayer_fourier: exterior side needs r >= r0");
  const double q = r0 / r;
  return {-r0 / (2.0 * k) * std::pow(q, k), 0.5 * std::pow(q, k + 1)};
}

namespace {

Eigen::MatrixXd circle_single_layer_matrix(const DiscretizedCurve& curve) {
  const int M = curve.size();
  const double r0 = curve.circle->radius;
  const int K = M / 2;
  auto sigma = [&](int n) { return n == 0 ? r0 * std::log(r0) : -r0 / (2.0 * std::abs(n)); };
  Eigen::MatrixXd S(M, M);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      const double dt = 2.0 * kPi * (i - j) / M;
      double sum = sigma(0);
      for (int n = 1; n <= K; ++n) {
        const double w = (M % 2 == 0 && n == K) ? 1.0 : 2.0;
        sum += w * sigma(n) * std::cos(n * dt);
      }
      S(i, j) = sum / M;
    }
  }
  return S;
}

}  // namespace

Eigen::MatrixXd single_layer_kress_matrix(const DiscretizedCurve& curve) {
  const int M = curve.size();
  if (M % 2 != 0) throw InputError("single_layer_kress_matrix: needs an even node count");
  const int half = M / 2;
  Eigen::MatrixXd S(M, M);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      const double dt = 2.0 * kPi * (i - j) / M;
      double R = 0.0;
      for (int m = 1; m < half; ++m) R -= std::cos(m * dt) / m;
      R = R * 4.0 * kPi / M - 4.0 * kPi / (static_cast<double>(M) * M) * std::cos(half * dt);
      double smooth;
      if (i == j) {
        smooth = 2.0 * std::log(curve.speed(i));
      } else {
        const double s = 2.0 * std::sin(0.5 * dt);
        smooth = std::log(std::norm(curve.nodes(i) - curve.nodes(j)) / (s * s));
      }
      S(i, j) = (R + 2.0 * kPi / M * smooth) * curve.speed(j) / (4.0 * kPi);
    }
  }
  return S;
}

Eigen::MatrixXd single_layer_onboundary_matrix(const DiscretizedCurve& curve) {
  if (curve.circle) return circle_single_layer_matrix(curve);
  return single_layer_kress_matrix(curve);
}

cplx hstar_inner(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi, const DiscretizedCurve& curve,
                 const Eigen::MatrixXd& single_layer) {
  auto check_mean = [&](const Eigen::VectorXcd& f, const char* name) {
    const double scale = (curve.weights.array() * f.array().abs()).sum();
    if (std::abs(curve.integrate(f)) > 1e-8 * std::max(scale, 1e-300))
      throw InputError(std::string("hstar_inner: density ") + name + " does not have zero mean");
  };
  check_mean(phi, "phi");
  check_mean(psi, "psi");
  const Eigen::VectorXcd Spsi = single_layer * psi;
  return -(curve.weights.array() * phi.conjugate().array() * Spsi.array()).sum();
}

cplx hstar_inner(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi, const DiscretizedCurve& curve) {
  return hstar_inner(phi, psi, curve, single_layer_onboundary_matrix(curve));
}

cplx contrast(cplx eps_inside, cplx eps_outside) {
  if (eps_inside == eps_outside) throw DomainError("contrast: equal permittivities have no finite contrast");
  return (eps_inside + eps_outside) / (2.0 * (eps_inside - eps_outside));
}

Eigen::VectorXcd SingleParticleSolution::total_field(const Eigen::VectorXcd& targets) const {
  Eigen::VectorXcd u = single_layer_offboundary(curve_, density_, targets).values;
  for (int t = 0; t < targets.size(); ++t) u(t) += incident_.a1 * targets(t).real() + incident_.a2 * targets(t).imag();
  return u;
}

SingleParticleSolution solve_single_particle(const DiscretizedCurve& curve, cplx lambda, UniformField incident) {
  Eigen::VectorXcd rhs(curve.size());
  for (int j = 0; j < curve.size(); ++j)
    rhs(j) = incident.a1 * curve.normals(j).real() + incident.a2 * curve.normals(j).imag();
  return {curve, solve_second_kind(lambda, curve, rhs), incident};
}

SingleParticleSolution solve_single_particle(const DiscretizedCurve& curve, double eps_inside, double eps_outside,
                                             UniformField incident) {
  if (eps_inside == eps_outside) return {curve, Eigen::VectorXcd::Zero(curve.size()), incident};
  return solve_single_particle(curve, contrast(eps_inside, eps_outside), incident);
}

CoupledDensities solve_coupled(const DiscretizedCurve& curve1, const DiscretizedCurve& curve2, cplx lambda_mp,
                               cplx lambda_pc, const Eigen::VectorXcd& f1, const Eigen::VectorXcd& f2) {
  if (lambda_mp.imag() == 0.0 && std::abs(lambda_mp.real()) <= 0.5)
    throw DomainError("solve_coupled: need |lambda_mp| > 1/2");
  const int M1 = curve1.size(), M2 = curve2.size();
  if (f1.size() != M1 || f2.size() != M2) throw InputError("solve_coupled: right-hand side size mismatch");
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < M1; ++i)
    for (int j = 0; j < M2; ++j) gap = std::min(gap, std::abs(curve1.nodes(i) - curve2.nodes(j)));
  if (gap < 0.5 * std::max(curve1.mesh_size(), curve2.mesh_size()))
    throw GeometryError("solve_coupled: curves are not disjoint");

  Eigen::MatrixXcd A(M1 + M2, M1 + M2);
  A.topLeftCorner(M1, M1) = -np_star_matrix(curve1).cast<cplx>();
  A.topLeftCorner(M1, M1).diagonal().array() += lambda_mp;
  A.bottomRightCorner(M2, M2) = -np_star_matrix(curve2).cast<cplx>();
  A.bottomRightCorner(M2, M2).diagonal().array() += lambda_pc;
  A.topRightCorner(M1, M2) = -single_layer_normal_derivative_matrix(curve2, curve1).cast<cplx>();
  A.bottomLeftCorner(M2, M1) = -single_layer_normal_derivative_matrix(curve1, curve2).cast<cplx>();

  Eigen::VectorXcd rhs(M1 + M2);
  rhs << f1, f2;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  if (!(lu.rcond() > 1e-13)) throw SingularSystemError("solve_coupled: block system is singular (resonance)");
  const Eigen::VectorXcd x = lu.solve(rhs);
  const double scale = std::max(rhs.cwiseAbs().maxCoeff(), 1e-300);
  return {x.head(M1), x.tail(M2), (A * x - rhs).cwiseAbs().maxCoeff() / scale};
}

}  // namespace nearfield
