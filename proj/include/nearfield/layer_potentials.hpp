#pragma once

// Nystrom discretization of the Laplace single layer
//   S[phi](x) = \int Gamma(x, y) phi(y) dsigma(y),  Gamma = ln|x - y| / (2 pi),
// and of the Neumann-Poincare operator
//   K*[phi](x) = \int <x - y, nu(x)> / (2 pi |x - y|^2) phi(y) dsigma(y)
// on smooth closed curves, with the trapezoidal rule in the curve parameter.

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nearfield/curve.hpp"

namespace nearfield {

/// M x M matrix of K*: off-diagonal kernel times weights, diagonal
/// kappa / (4 pi) times the weight.
Eigen::MatrixXd np_star_matrix(const DiscretizedCurve& curve);

/// Dense LU factorization of (lambda I - K*) reused across right-hand sides.
class ResolventSolver {
 public:
  /// Throws DomainError for real |lambda| <= 1/2 unless allow_interior is set,
  /// and SingularSystemError when the factorization is singular.
  ResolventSolver(const DiscretizedCurve& curve, cplx lambda, bool allow_interior = false);

  Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const;
  cplx lambda() const { return lambda_; }
  const Eigen::MatrixXd& kstar() const { return kstar_; }

 private:
  cplx lambda_;
  Eigen::MatrixXd kstar_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

/// Solve (lambda I - K*) phi = rhs.
Eigen::VectorXcd solve_second_kind(cplx lambda, const DiscretizedCurve& curve, const Eigen::VectorXcd& rhs);

struct OffBoundaryValues {
  Eigen::VectorXcd values;
  /// Targets closer to the curve than its mesh size; quadrature there is unreliable.
  std::vector<int> near_targets;
};

OffBoundaryValues single_layer_offboundary(const DiscretizedCurve& curve, const Eigen::VectorXcd& phi,
                                           const Eigen::VectorXcd& targets);

/// Gradient (d/dx1, d/dx2) of S[phi] at off-curve targets.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> single_layer_gradient(const DiscretizedCurve& curve,
                                                                   const Eigen::VectorXcd& phi,
                                                                   const Eigen::VectorXcd& targets);

/// Matrix of the normal derivative d/dnu_target S_source[.] from the source
/// curve's nodes to the target curve's nodes (curves disjoint).
Eigen::MatrixXd single_layer_normal_derivative_matrix(const DiscretizedCurve& source, const DiscretizedCurve& target);

enum class Side { Interior, Exterior };

struct RadialMultiplier {
  double value;       // S_B[e^{in theta}] = value * e^{in theta} at radius r
  double derivative;  // d/dr S_B[e^{in theta}] = derivative * e^{in theta}
};

/// Single layer of the circle of radius r0 about the origin applied to
/// e^{in theta}, evaluated at radius r on the given side.
RadialMultiplier circle_singlelayer_fourier(int n, double r0, double r, Side side);

/// On-boundary single layer as an M x M matrix. Circles use the exact Fourier
/// multipliers; other curves use the logarithmic-singularity quadrature
/// ln|x - y| = ln|2 sin((t - tau)/2)| + smooth remainder, with the singular
/// factor integrated exactly against the trigonometric interpolant.
Eigen::MatrixXd single_layer_onboundary_matrix(const DiscretizedCurve& curve);
/// Same as above but always through the singular quadrature (for non-circle
/// checks on circles).
Eigen::MatrixXd single_layer_kress_matrix(const DiscretizedCurve& curve);

/// (phi, psi)_{H*} = -(phi, S[psi]) with conjugation on phi. Both densities
/// must have zero mean; throws InputError otherwise.
cplx hstar_inner(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi, const DiscretizedCurve& curve);
cplx hstar_inner(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi, const DiscretizedCurve& curve,
                 const Eigen::MatrixXd& single_layer);

/// Uniform incident potential u^i(x) = a . x.
struct UniformField {
  double a1 = 1.0;
  double a2 = 0.0;
};

/// Quasi-static single particle: u = u^i + S[phi], (lambda I - K*) phi = du^i/dnu.
class SingleParticleSolution {
 public:
  SingleParticleSolution(DiscretizedCurve curve, Eigen::VectorXcd density, UniformField incident)
      : curve_(std::move(curve)), density_(std::move(density)), incident_(incident) {}

  const Eigen::VectorXcd& density() const { return density_; }
  /// Total potential at off-curve targets.
  Eigen::VectorXcd total_field(const Eigen::VectorXcd& targets) const;

 private:
  DiscretizedCurve curve_;
  Eigen::VectorXcd density_;
  UniformField incident_;
};

SingleParticleSolution solve_single_particle(const DiscretizedCurve& curve, cplx lambda, UniformField incident);
/// Permittivity form; eps_inside == eps_outside gives the zero density.
SingleParticleSolution solve_single_particle(const DiscretizedCurve& curve, double eps_inside, double eps_outside,
                                             UniformField incident);

/// lambda = (eps_inside + eps_outside) / (2 (eps_inside - eps_outside)).
cplx contrast(cplx eps_inside, cplx eps_outside);

struct CoupledDensities {
  Eigen::VectorXcd phi1;
  Eigen::VectorXcd phi2;
  double residual;  // max-norm residual relative to the right-hand side
};

/// Two-curve system
///   (lambda_mp I - K*_1) phi1 - dS_2[phi2]/dnu_1 = f1 on curve 1,
///   (lambda_pc I - K*_2) phi2 - dS_1[phi1]/dnu_2 = f2 on curve 2.
/// lambda_pc may lie inside the spectrum region (|lambda_pc| < 1/2).
CoupledDensities solve_coupled(const DiscretizedCurve& curve1, const DiscretizedCurve& curve2, cplx lambda_mp,
                               cplx lambda_pc, const Eigen::VectorXcd& f1, const Eigen::VectorXcd& f2);

}  // namespace nearfield
