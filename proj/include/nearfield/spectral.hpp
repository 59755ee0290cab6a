#pragma once

// Truncated coupling operator A acting on densities on the particle image
// circle dD2 = {|zeta| = e^s}, written in the signed Fourier basis
// e^{i n theta}, n in {-N..-1, 1..N}:
//
//   A = K*_{D2} + d/dnu_2 S_{D1} (lambda_mp I - K*_{D1})^{-1} dS_{D2}[.]/dnu_1.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nearfield/curve.hpp"
#include "nearfield/fourier.hpp"
#include "nearfield/gpt.hpp"
#include "nearfield/layer_potentials.hpp"

namespace nearfield {

enum class AssemblyVariant { Exact, AsymptoticFirstOrder, Direct };

std::string to_string(AssemblyVariant v);

struct TruncatedOperatorA {
  int N_mat = 0;
  /// matrix(idx(m), idx(n)) = coefficient of e^{i m theta} in A[e^{i n theta}],
  /// idx from SignedBasis(N_mat).
  Eigen::MatrixXcd matrix;
  AssemblyVariant variant = AssemblyVariant::Exact;

  SignedBasis basis() const { return SignedBasis(N_mat); }
};

/// lambda0_n = -e^{-2|n|s} / (4 lambda_mp), the doublet value for the flat plane.
cplx unperturbed_eigenvalue(int n, double s, cplx lambda_mp);

/// Entries -(1/(8 pi |n|)) e^{-(|n|+|m|)s} N2_signed[n, m] at (row m, column n).
/// Throws InputError when the CGPT order is below N_mat.
TruncatedOperatorA assemble_exact_A(const CGPTSet& cgpt, double s, int N_mat);

/// A0 + delta A1 from the first-order expansion of the CGPTs of the
/// perturbed unit disk:
///   A1(m, n) = -(eps_m |nm| + eps_p nm) / (4 |n| (eps_m - eps_p) lambda^2) e^{-(|n|+|m|)s} h^(m - n).
/// In 2x2 blocks over (n, -n) x (m, -m), n, m > 0, row m picks up h^(m-n) and
/// h^(m+n) times 2 lambda m and m respectively, the conjugate row -m picks up
/// h^(-m-n) and 2 lambda h^(n-m).
/// Throws InputError when lambda_mp does not match the permittivities or the
/// coefficients are not conjugation symmetric.
TruncatedOperatorA assemble_asymptotic_A(const FourierCoefficients& h, double s, cplx lambda_mp, double eps_minus,
                                         double eps_plus, double delta, int N_mat);

/// Apply A to a density on dD2 given by signed Fourier coefficients
/// (SignedBasis(N_mat) layout) using layer potentials on curve1 and an
/// M2-node discretization of dD2. The dD2 single layer is taken from its
/// exact radial multipliers; S_{D1} is evaluated on dD2 by smooth quadrature.
class DirectCouplingOperator {
 public:
  /// Throws GeometryError unless curve1 lies strictly inside |zeta| = e^s.
  DirectCouplingOperator(const DiscretizedCurve& curve1, double s, cplx lambda_mp, int N_mat, int M2 = 256);

  Eigen::VectorXcd apply(const Eigen::VectorXcd& coefficients) const;
  int N_mat() const { return N_mat_; }

 private:
  DiscretizedCurve curve1_;
  DiscretizedCurve curve2_;
  double s_;
  int N_mat_;
  ResolventSolver solver_;
  Eigen::MatrixXd trace_;  // d/dnu_2 S_{D1} from curve1 nodes to curve2 nodes
};

Eigen::VectorXcd apply_A_direct(const DiscretizedCurve& curve1, double s, cplx lambda_mp,
                                const Eigen::VectorXcd& coefficients);
TruncatedOperatorA assemble_direct_A(const DiscretizedCurve& curve1, double s, cplx lambda_mp, int N_mat);

struct EigenPair {
  double value = 0.0;
  /// Eigenvector in the symmetrized basis (component n scaled by 1/sqrt|n|),
  /// unit norm, SignedBasis layout.
  Eigen::VectorXcd vector;
};

struct EigenDecomposition {
  int N_mat = 0;
  std::vector<EigenPair> pairs;  // descending |value|, then even parity first
  double max_imag = 0.0;         // largest discarded imaginary part
};

/// Throws SingularSystemError when the eigen-solver fails to converge and
/// InputError when an eigenvalue has imaginary part above 1e-8 relative to
/// the spectral radius (the matrix is not of the self-adjoint kind).
EigenDecomposition eigendecompose(const TruncatedOperatorA& A);

struct Cluster {
  int n = 0;
  double lambda0 = 0.0;
  double lambda_plus = 0.0;   // even eigenvector (equal-sign components on e_n, e_{-n})
  double lambda_minus = 0.0;  // odd eigenvector
  double shift_plus = 0.0;    // (lambda_plus - lambda0) / delta
  double shift_minus = 0.0;
  double overlap_quality = 0.0;  // min over the pair of |v_n|^2 + |v_{-n}|^2
  double parity_purity = 1.0;    // how cleanly the pair separates into even/odd
  bool degenerate = false;       // splitting below numerical resolution
  bool valid = false;
  std::string flag;  // reason when !valid
};

struct SpectralClusters {
  double delta = 0.0;
  std::vector<Cluster> clusters;  // n = 1..N_mat
  /// Largest K such that clusters 1..K are all valid.
  int usable_order = 0;

  const Cluster& at(int n) const;
};

/// Pair eigenvalues with the unperturbed doublets by eigenvector overlap with
/// span{e_n, e_{-n}}. A cluster is invalid when the overlap quality is below
/// 0.9 or its doublet moved by half the gap to a neighbouring lambda0.
SpectralClusters match_clusters(const EigenDecomposition& eig, double s, cplx lambda_mp, double delta);

struct FirstOrderShift {
  int n = 0;
  double plus = 0.0;
  double minus = 0.0;
};

/// lambda1_{+-n} = |n| lambda0_n (2 h^(0) +- h^(2n) / lambda_mp) for even real h.
std::vector<FirstOrderShift> first_order_shifts(const FourierCoefficients& h, double s, double lambda_mp, int N);

}  // namespace nearfield
