#include "nearfield/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "nearfield/errors.hpp"

namespace nearfield {

std::string to_string(AssemblyVariant v) {
  switch (v) {
    case AssemblyVariant::Exact: return "exact";
    case AssemblyVariant::AsymptoticFirstOrder: return "asymptotic_first_order";
    case AssemblyVariant::Direct: return "direct";
  }
  return "unknown";
}

cplx unperturbed_eigenvalue(int n, double s, cplx lambda_mp) {
  if (n == 0) throw InputError("unperturbed_eigenvalue: n must be nonzero");
  return -std::exp(-2.0 * std::abs(n) * s) / (4.0 * lambda_mp);
}

TruncatedOperatorA assemble_exact_A(const CGPTSet& cgpt, double s, int N_mat) {
  if (N_mat < 1) throw InputError("assemble_exact_A: N_mat must be >= 1");
  if (cgpt.order < N_mat) throw InputError("assemble_exact_A: CGPT order is below N_mat");
  TruncatedOperatorA A;
  A.N_mat = N_mat;
  A.variant = AssemblyVariant::Exact;
  const SignedBasis b(N_mat);
  A.matrix.resize(b.size(), b.size());
  for (int col = 0; col < b.size(); ++col) {
    const int n = b.mode(col);
    for (int row = 0; row < b.size(); ++row) {
      const int m = b.mode(row);
      const double scale = -std::exp(-(std::abs(n) + std::abs(m)) * s) / (8.0 * kPi * std::abs(n));
      A.matrix(row, col) = scale * cgpt.n2_signed(n, m);
    }
  }
  return A;
}

TruncatedOperatorA assemble_asymptotic_A(const FourierCoefficients& h, double s, cplx lambda_mp, double eps_minus,
                                         double eps_plus, double delta, int N_mat) {
  if (N_mat < 1) throw InputError("assemble_asymptotic_A: N_mat must be >= 1");
  if (eps_minus == eps_plus) throw DomainError("assemble_asymptotic_A: zero contrast");
  const cplx lam = contrast(eps_minus, eps_plus);
  if (std::abs(lam - lambda_mp) > 1e-12 * std::abs(lam))
    throw InputError("assemble_asymptotic_A: lambda_mp does not match eps_minus, eps_plus");
  if (h.conjugation_defect() > 1e-10 * (1.0 + std::abs(h(0))))
    throw InputError("assemble_asymptotic_A: coefficients of a real profile must be conjugation symmetric");

  TruncatedOperatorA A;
  A.N_mat = N_mat;
  A.variant = AssemblyVariant::AsymptoticFirstOrder;
  const SignedBasis b(N_mat);
  A.matrix = Eigen::MatrixXcd::Zero(b.size(), b.size());
  for (int col = 0; col < b.size(); ++col) {
    const int n = b.mode(col);
    A.matrix(col, col) = unperturbed_eigenvalue(n, s, lam);
    for (int row = 0; row < b.size(); ++row) {
      const int m = b.mode(row);
      const double nm = static_cast<double>(n) * m;
      const cplx coef = -(eps_minus * std::abs(nm) + eps_plus * nm) /
                        (4.0 * std::abs(n) * (eps_minus - eps_plus) * lam * lam) *
                        std::exp(-(std::abs(n) + std::abs(m)) * s);
      A.matrix(row, col) += delta * coef * h(m - n);
    }
  }
  return A;
}

DirectCouplingOperator::DirectCouplingOperator(const DiscretizedCurve& curve1, double s, cplx lambda_mp, int N_mat,
                                               int M2)
    : curve1_(curve1), curve2_(make_circle(M2, std::exp(s))), s_(s), N_mat_(N_mat), solver_(curve1, lambda_mp) {
  if (N_mat < 1) throw InputError("DirectCouplingOperator: N_mat must be >= 1");
  if (M2 < 4 * N_mat) throw InputError("DirectCouplingOperator: M2 too small for N_mat");
  const double R2 = std::exp(s);
  if (curve1.nodes.cwiseAbs().maxCoeff() >= R2)
    throw GeometryError("DirectCouplingOperator: inner curve must lie strictly inside |zeta| = e^s");
  trace_ = single_layer_normal_derivative_matrix(curve1_, curve2_);
}

Eigen::VectorXcd DirectCouplingOperator::apply(const Eigen::VectorXcd& coefficients) const {
  const SignedBasis b(N_mat_);
  if (coefficients.size() != b.size()) throw InputError("DirectCouplingOperator::apply: coefficient size mismatch");
  const int M1 = curve1_.size();

  // dS_{D2}[e^{in theta}]/dnu_1 inside the circle: S_{D2}[e^{in theta}] = -e^{(1-|n|)s} / (2|n|) H_n with
  // H_n = z^n (n > 0) or conj(z)^{|n|} (n < 0).
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(M1);
  for (int i = 0; i < b.size(); ++i) {
    const cplx c = coefficients(i);
    if (c == cplx{}) continue;
    const int n = b.mode(i);
    const int k = std::abs(n);
    const double scale = -std::exp((1.0 - k) * s_) / (2.0 * k);
    for (int j = 0; j < M1; ++j) {
      const cplx z = curve1_.nodes(j);
      const cplx nu = curve1_.normals(j);
      const cplx dH = n > 0 ? static_cast<double>(k) * std::pow(z, k - 1) * nu
                            : static_cast<double>(k) * std::pow(std::conj(z), k - 1) * std::conj(nu);
      g(j) += c * scale * dH;
    }
  }
  const Eigen::VectorXcd psi = solver_.solve(g);
  // K*_{D2} annihilates nonzero harmonics on a circle, so only the coupling term remains.
  const Eigen::VectorXcd u = trace_.cast<cplx>() * psi;

  const int M2 = curve2_.size();
  Eigen::VectorXcd out(b.size());
  for (int i = 0; i < b.size(); ++i) {
    const int m = b.mode(i);
    cplx acc{};
    for (int j = 0; j < M2; ++j) acc += u(j) * std::polar(1.0, -m * 2.0 * kPi * j / M2);
    out(i) = acc / static_cast<double>(M2);
  }
  return out;
}

Eigen::VectorXcd apply_A_direct(const DiscretizedCurve& curve1, double s, cplx lambda_mp,
                                const Eigen::VectorXcd& coefficients) {
  if (coefficients.size() < 2 || coefficients.size() % 2 != 0)
    throw InputError("apply_A_direct: coefficients must use the signed basis layout");
  const int N = static_cast<int>(coefficients.size() / 2);
  return DirectCouplingOperator(curve1, s, lambda_mp, N).apply(coefficients);
}

TruncatedOperatorA assemble_direct_A(const DiscretizedCurve& curve1, double s, cplx lambda_mp, int N_mat) {
  const DirectCouplingOperator op(curve1, s, lambda_mp, N_mat);
  TruncatedOperatorA A;
  A.N_mat = N_mat;
  A.variant = AssemblyVariant::Direct;
  const int size = 2 * N_mat;
  A.matrix.resize(size, size);
  for (int col = 0; col < size; ++col) A.matrix.col(col) = op.apply(Eigen::VectorXcd::Unit(size, col));
  return A;
}

namespace {

// Positive when the components on e_n and e_{-n} have equal sign.
double parity_of(const Eigen::VectorXcd& v, int n, const SignedBasis& b) {
  return std::real(v(b.index(n)) * std::conj(v(b.index(-n))));
}

}  // namespace

EigenDecomposition eigendecompose(const TruncatedOperatorA& A) {
  const SignedBasis b(A.N_mat);
  if (A.matrix.rows() != b.size() || A.matrix.cols() != b.size())
    throw InputError("eigendecompose: matrix size does not match N_mat");
  if (!A.matrix.allFinite()) throw InputError("eigendecompose: matrix has non-finite entries");

  // B = S A S^{-1}, S = diag(1/sqrt|n|), is Hermitian for real contrast.
  Eigen::VectorXd S(b.size());
  for (int i = 0; i < b.size(); ++i) S(i) = 1.0 / std::sqrt(static_cast<double>(std::abs(b.mode(i))));
  const Eigen::MatrixXcd B = S.asDiagonal() * A.matrix * S.cwiseInverse().asDiagonal();

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(B);
  if (solver.info() != Eigen::Success) throw SingularSystemError("eigendecompose: eigen-solver did not converge");

  EigenDecomposition out;
  out.N_mat = A.N_mat;
  double radius = 0.0;
  for (int i = 0; i < b.size(); ++i) radius = std::max(radius, std::abs(solver.eigenvalues()(i)));
  for (int i = 0; i < b.size(); ++i) {
    const cplx lam = solver.eigenvalues()(i);
    out.max_imag = std::max(out.max_imag, std::abs(lam.imag()));
    EigenPair p;
    p.value = lam.real();
    p.vector = solver.eigenvectors().col(i).normalized();
    out.pairs.push_back(std::move(p));
  }
  if (out.max_imag > 1e-8 * std::max(radius, 1e-300) && out.max_imag > 1e-14)
    throw InputError("eigendecompose: spectrum is not real (imaginary part " + std::to_string(out.max_imag) + ")");

  // Dominant mode of each eigenvector decides the parity tie-break.
  auto parity_key = [&](const EigenPair& p) {
    Eigen::Index imax = 0;
    p.vector.cwiseAbs().maxCoeff(&imax);
    const int n = std::abs(b.mode(static_cast<int>(imax)));
    return parity_of(p.vector, n, b) >= 0.0 ? 0 : 1;
  };
  std::stable_sort(out.pairs.begin(), out.pairs.end(), [&](const EigenPair& x, const EigenPair& y) {
    const double ax = std::abs(x.value), ay = std::abs(y.value);
    if (std::abs(ax - ay) > 1e-14 * std::max(ax, ay)) return ax > ay;
    return parity_key(x) < parity_key(y);
  });
  return out;
}

const Cluster& SpectralClusters::at(int n) const {
  for (const auto& c : clusters)
    if (c.n == n) return c;
  throw InputError("SpectralClusters::at: no cluster for n = " + std::to_string(n));
}

SpectralClusters match_clusters(const EigenDecomposition& eig, double s, cplx lambda_mp, double delta) {
  const int N = eig.N_mat;
  const SignedBasis b(N);
  if (static_cast<int>(eig.pairs.size()) != b.size()) throw InputError("match_clusters: decomposition is incomplete");

  SpectralClusters out;
  out.delta = delta;
  for (int n = 1; n <= N; ++n) {
    Cluster c;
    c.n = n;
    c.lambda0 = unperturbed_eigenvalue(n, s, lambda_mp).real();

    std::vector<int> order(eig.pairs.size());
    std::iota(order.begin(), order.end(), 0);
    auto overlap = [&](int k) {
      const auto& v = eig.pairs[k].vector;
      return std::norm(v(b.index(n))) + std::norm(v(b.index(-n)));
    };
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return overlap(x) > overlap(y); });
    const auto& pa = eig.pairs[order[0]];
    const auto& pb = eig.pairs[order[1]];
    c.overlap_quality = std::min(overlap(order[0]), overlap(order[1]));

    const double split = std::abs(pa.value - pb.value);
    c.degenerate = split <= 1e-12 * std::abs(c.lambda0);
    const double par_a = parity_of(pa.vector, n, b);
    const double par_b = parity_of(pb.vector, n, b);
    const bool a_even = c.degenerate ? pa.value >= pb.value : par_a >= par_b;
    c.lambda_plus = a_even ? pa.value : pb.value;
    c.lambda_minus = a_even ? pb.value : pa.value;
    if (c.degenerate) {
      c.parity_purity = 1.0;
    } else {
      auto purity = [&](const EigenPair& p, double par) {
        const double w = std::norm(p.vector(b.index(n))) + std::norm(p.vector(b.index(-n)));
        return w > 0.0 ? 2.0 * std::abs(par) / w : 0.0;
      };
      c.parity_purity = std::min(purity(pa, par_a), purity(pb, par_b));
      if (par_a * par_b > 0.0) c.parity_purity = 0.0;
    }
    if (delta != 0.0) {
      c.shift_plus = (c.lambda_plus - c.lambda0) / delta;
      c.shift_minus = (c.lambda_minus - c.lambda0) / delta;
    }

    const double moved = std::max(std::abs(c.lambda_plus - c.lambda0), std::abs(c.lambda_minus - c.lambda0));
    double gap = std::abs(c.lambda0 - unperturbed_eigenvalue(n + 1, s, lambda_mp).real());
    if (n > 1) gap = std::min(gap, std::abs(c.lambda0 - unperturbed_eigenvalue(n - 1, s, lambda_mp).real()));
    c.valid = true;
    if (c.overlap_quality < 0.9) {
      c.valid = false;
      c.flag = "ambiguous match: overlap quality " + std::to_string(c.overlap_quality);
    } else if (moved >= 0.5 * gap) {
      c.valid = false;
      c.flag = "doublet shift exceeds half the gap to a neighbouring cluster";
    }
    out.clusters.push_back(c);
  }
  out.usable_order = 0;
  for (const auto& c : out.clusters) {
    if (!c.valid) break;
    out.usable_order = c.n;
  }
  return out;
}

std::vector<FirstOrderShift> first_order_shifts(const FourierCoefficients& h, double s, double lambda_mp, int N) {
  if (lambda_mp == 0.0) throw DomainError("first_order_shifts: lambda_mp must be nonzero");
  std::vector<FirstOrderShift> out;
  for (int n = 1; n <= N; ++n) {
    const double l0 = unperturbed_eigenvalue(n, s, lambda_mp).real();
    const double h0 = h(0).real();
    const double h2n = h(2 * n).real();
    out.push_back({n, n * l0 * (2.0 * h0 + h2n / lambda_mp), n * l0 * (2.0 * h0 - h2n / lambda_mp)});
  }
  return out;
}

}  // namespace nearfield
