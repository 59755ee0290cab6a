#include "nearfield/gpt.hpp"

#include <cmath>
#include <vector>

#include "nearfield/errors.hpp"
#include "nearfield/layer_potentials.hpp"

namespace nearfield {

cplx CGPTSet::n2_signed(int n, int m) const {
  if (n == 0 || m == 0 || std::abs(n) > order || std::abs(m) > order)
    throw InputError("CGPTSet::n2_signed: index out of range");
  const SignedBasis b(order);
  return N2_signed(b.index(n), b.index(m));
}

CGPTSet compute_cgpt(const DiscretizedCurve& curve, cplx lambda_D, int order) {
  if (order < 1) throw InputError("compute_cgpt: order must be >= 1");
  if (curve.winding_number(0.0) != 1) throw DomainError("compute_cgpt: curve must enclose the origin");
  const ResolventSolver solver(curve, lambda_D);
  const int M = curve.size();

  // powers(k)(j) = z_j^k
  std::vector<Eigen::VectorXcd> powers(static_cast<std::size_t>(order + 1), Eigen::VectorXcd::Ones(M));
  for (int k = 1; k <= order; ++k) powers[k] = powers[k - 1].cwiseProduct(curve.nodes);

  // Densities for the cosine (Re P_m) and sine (Im P_m) sources.
  std::vector<Eigen::VectorXcd> dens_c(static_cast<std::size_t>(order + 1)), dens_s(static_cast<std::size_t>(order + 1));
  for (int m = 1; m <= order; ++m) {
    // dP_m/dnu as a complex number: m z^{m-1} (nu1 + i nu2); real part is the
    // normal derivative of Re P_m, imaginary part that of Im P_m.
    const Eigen::VectorXcd dP = static_cast<double>(m) * powers[m - 1].cwiseProduct(curve.normals);
    dens_c[m] = solver.solve(dP.real().cast<cplx>());
    dens_s[m] = solver.solve(dP.imag().cast<cplx>());
  }

  CGPTSet g;
  g.order = order;
  g.lambda = lambda_D;
  g.Mcc.resize(order, order);
  g.Mcs.resize(order, order);
  g.Msc.resize(order, order);
  g.Mss.resize(order, order);
  for (int m = 1; m <= order; ++m) {
    for (int n = 1; n <= order; ++n) {
      const Eigen::VectorXcd re = powers[n].real().cast<cplx>();
      const Eigen::VectorXcd im = powers[n].imag().cast<cplx>();
      g.Mcc(m - 1, n - 1) = curve.integrate(re.cwiseProduct(dens_c[m]));
      g.Mcs(m - 1, n - 1) = curve.integrate(im.cwiseProduct(dens_c[m]));
      g.Msc(m - 1, n - 1) = curve.integrate(re.cwiseProduct(dens_s[m]));
      g.Mss(m - 1, n - 1) = curve.integrate(im.cwiseProduct(dens_s[m]));
    }
  }
  const cplx I(0.0, 1.0);
  g.N1 = g.Mcc - g.Mss + I * (g.Mcs + g.Msc);
  g.N2 = g.Mcc + g.Mss - I * (g.Mcs - g.Msc);

  const SignedBasis basis(order);
  g.N2_signed.resize(basis.size(), basis.size());
  for (int a = 0; a < basis.size(); ++a) {
    const int n = basis.mode(a);
    const int k = std::abs(n);
    // Source r^{|n|} e^{i n theta} = Re P_k + i sgn(n) Im P_k.
    const Eigen::VectorXcd source = dens_c[k] + (n > 0 ? I : -I) * dens_s[k];
    for (int b = 0; b < basis.size(); ++b) {
      const int m = basis.mode(b);
      const int l = std::abs(m);
      // Receiver r^{|m|} e^{-i m theta}: conj(P_l) for m > 0, P_l for m < 0.
      const Eigen::VectorXcd receiver = m > 0 ? Eigen::VectorXcd(powers[l].conjugate()) : powers[l];
      g.N2_signed(a, b) = curve.integrate(receiver.cwiseProduct(source));
    }
  }
  return g;
}

Eigen::MatrixXcd cgpt_delta(const CGPTSet& perturbed, const CGPTSet& reference) {
  if (perturbed.order != reference.order) throw InputError("cgpt_delta: order mismatch");
  if (perturbed.lambda != reference.lambda) throw InputError("cgpt_delta: contrast mismatch");
  return perturbed.N2_signed - reference.N2_signed;
}

double shape_derivative_coefficient(double eps_D, double eps_0, int n, int m) {
  if (eps_D == eps_0) throw DomainError("shape_derivative_coefficient: zero contrast");
  const double lambda = (eps_D + eps_0) / (2.0 * (eps_D - eps_0));
  const double nm = static_cast<double>(n) * m;
  return 2.0 * kPi * (eps_D * std::abs(nm) + eps_0 * nm) / ((eps_D - eps_0) * lambda * lambda);
}

cplx shape_derivative_prediction(double eps_D, double eps_0, double delta, const FourierCoefficients& h, int n, int m) {
  if (n == 0 || m == 0) throw InputError("shape_derivative_prediction: indices must be nonzero");
  return delta * shape_derivative_coefficient(eps_D, eps_0, n, m) * h(m - n);
}

}  // namespace nearfield
