#include <doctest.h>

#include <cmath>

#include "nearfield/curve.hpp"
#include "nearfield/gpt.hpp"
#include "nearfield/layer_potentials.hpp"

using namespace nearfield;

TEST_CASE("unit disk closed forms") {
  const auto disk = make_circle(300, 1.0);
  const auto g = compute_cgpt(disk, 1.0, 8);
  for (int n = 1; n <= 8; ++n) {
    CHECK(g.Mcc(n - 1, n - 1).real() == doctest::Approx(n * kPi).epsilon(1e-10));
    CHECK(g.Mss(n - 1, n - 1).real() == doctest::Approx(n * kPi).epsilon(1e-10));
    CHECK(std::abs(g.N2(n - 1, n - 1) - 2.0 * kPi * n) < 1e-8 * 2.0 * kPi * n);
  }
  CHECK(g.N1.cwiseAbs().maxCoeff() < 1e-10);
  Eigen::MatrixXcd off = g.N2;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(compute_cgpt(disk, 2.0, 1).N2(0, 0) - kPi) < 1e-10);
}

TEST_CASE("symmetry and complex combinations on an ellipse") {
  const auto e = make_ellipse(300, 1.4, 0.8, cplx(0.1, 0.05), 0.4);
  const auto g = compute_cgpt(e, 1.3, 5);
  const double scale = g.Mcc.cwiseAbs().maxCoeff();
  CHECK((g.Mcc - g.Mcc.transpose()).cwiseAbs().maxCoeff() < 1e-8 * scale);
  CHECK((g.Mss - g.Mss.transpose()).cwiseAbs().maxCoeff() < 1e-8 * scale);
  CHECK((g.Mcs - g.Msc.transpose()).cwiseAbs().maxCoeff() < 1e-8 * scale);
  const cplx I(0.0, 1.0);
  CHECK((g.N1 - (g.Mcc - g.Mss + I * (g.Mcs + g.Msc))).cwiseAbs().maxCoeff() < 1e-12 * scale);
  CHECK((g.N2 - (g.Mcc + g.Mss - I * (g.Mcs - g.Msc))).cwiseAbs().maxCoeff() < 1e-12 * scale);
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= 5; ++m) CHECK(std::abs(g.n2_signed(n, m) - g.N2(n - 1, m - 1)) < 1e-12 * scale);
}

TEST_CASE("N2_11 of a translated disk is rotation invariant") {
  const auto a = make_circle(256, 0.7, cplx(0.3, 0.2));
  const auto b = transform_curve(a, 0.9, cplx(0.0, 0.0));
  const auto ga = compute_cgpt(a, 1.5, 2), gb = compute_cgpt(b, 1.5, 2);
  CHECK(std::abs(ga.N2(0, 0) - gb.N2(0, 0)) < 1e-8 * std::abs(ga.N2(0, 0)));
}

TEST_CASE("shape derivative lemma plug-in values") {
  FourierCoefficients zero(4);
  CHECK(std::abs(shape_derivative_prediction(3.0, 1.0, 0.01, zero, 1, 1)) == 0.0);
  FourierCoefficients h(4);
  h.at(0) = 0.7;
  CHECK(std::abs(shape_derivative_prediction(3.0, 1.0, 0.01, h, 1, 1) - 0.01 * 4.0 * kPi * 0.7) < 1e-14);
}

TEST_CASE("shape derivative against perturbed-curve CGPTs") {
  const double delta = 1e-3, eps_D = 3.0, eps_0 = 1.0;
  const cplx lam = contrast(eps_D, eps_0);
  FourierCoefficients h(2);
  h.at(2) = h.at(-2) = 0.5;
  const auto ref = compute_cgpt(make_circle(300, 1.0), lam, 3);
  const auto per = compute_cgpt(make_perturbed_circle(300, h, delta), lam, 3);
  const Eigen::MatrixXcd dN = cgpt_delta(per, ref);
  const SignedBasis b(3);
  for (auto [n, m] : {std::pair{1, 3}, std::pair{1, -1}}) {
    const cplx pred = shape_derivative_prediction(eps_D, eps_0, delta, h, n, m);
    CHECK(std::abs(dN(b.index(n), b.index(m)) - pred) <= 5.0 * delta * std::abs(pred));
  }
  // h^(0) = 0: the (2,2) entry is second order.
  CHECK(std::abs(dN(b.index(2), b.index(2))) <= 5.0 * delta * delta * shape_derivative_coefficient(eps_D, eps_0, 2, 2));
  for (int n : {-3, -1, 2})
    for (int m : {-2, 1, 3})
      CHECK(std::abs(dN(b.index(-n), b.index(-m)) - std::conj(dN(b.index(n), b.index(m)))) < 1e-8);
  CHECK(cgpt_delta(ref, ref).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sine perturbation picks up the odd lemma orientation") {
  const double delta = 1e-3, eps_D = 3.0, eps_0 = 1.0;
  FourierCoefficients h(2);
  h.at(2) = cplx(0.0, -0.5);
  h.at(-2) = cplx(0.0, 0.5);  // sin 2 theta
  const cplx lam = contrast(eps_D, eps_0);
  const auto dN = cgpt_delta(compute_cgpt(make_perturbed_circle(300, h, delta), lam, 3),
                             compute_cgpt(make_circle(300, 1.0), lam, 3));
  const SignedBasis b(3);
  const cplx pred = shape_derivative_prediction(eps_D, eps_0, delta, h, 1, 3);
  CHECK(std::abs(dN(b.index(1), b.index(3)) - pred) <= 5.0 * delta * std::abs(pred));
}
