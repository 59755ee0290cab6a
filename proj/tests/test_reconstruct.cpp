#include <doctest.h>

#include <cmath>

#include "nearfield/errors.hpp"
#include "nearfield/gpt.hpp"
#include "nearfield/reconstruct.hpp"

using namespace nearfield;

TEST_CASE("zero shifts give zero coefficients") {
  const std::vector<FirstOrderShift> sh{{1, 0.0, 0.0}, {2, 0.0, 0.0}};
  const auto c = fourier_from_shift_values(sh, 1.0, 0.3, 4);
  for (int k = -4; k <= 4; ++k) CHECK(c(k) == cplx{});
}

TEST_CASE("planted shifts invert to the planted coefficients") {
  const double s = std::log(2.0 + std::sqrt(3.0));
  const std::vector<FirstOrderShift> sh{{1, -0.0125646, -0.0089746}};
  const auto c = fourier_from_shift_values(sh, 1.0, s, 2);
  CHECK(c(0).real() == doctest::Approx(0.300).epsilon(1e-4));
  CHECK(c(2).real() == doctest::Approx(0.100).epsilon(1e-4));
  CHECK(c(1) == cplx{});
  CHECK(c(2).imag() == 0.0);
  CHECK(c(-2) == std::conj(c(2)));
}

TEST_CASE("analytic round trip at several orders and contrasts") {
  for (double lam : {1.0, 0.75, -2.0}) {
    const double s = 0.4;
    FourierCoefficients h(6);
    h.at(0) = -0.4;
    for (int k : {2, 4, 6}) h.at(k) = h.at(-k) = 0.1 * k;
    const auto rec = fourier_from_shift_values(first_order_shifts(h, s, lam, 3), lam, s, 6);
    for (int k = 0; k <= 6; k += 2) CHECK(std::abs(rec(k) - h(k)) < 1e-12);
  }
}

TEST_CASE("inversion input guards") {
  const std::vector<FirstOrderShift> sh{{1, 0.0, 0.0}};
  CHECK_THROWS_AS(fourier_from_shift_values(sh, 1.0, 0.3, 3), InputError);
  CHECK_THROWS_AS(fourier_from_shift_values(sh, 1.0, 0.3, 4), InputError);
}

TEST_CASE("CGPT-route inversion of lemma data is exact") {
  const double eps_m = 3.0, eps_p = 1.0, delta = 0.01;
  const int N = 4;
  FourierCoefficients h(2 * N);
  for (int k = 0; k <= 2 * N; ++k) {
    h.at(k) = cplx(0.1 * (k + 1), 0.05 * k);
    h.at(-k) = std::conj(h(k));
  }
  h.at(0) = 0.3;
  const SignedBasis b(N);
  Eigen::MatrixXcd table(b.size(), b.size());
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      table(i, j) = shape_derivative_prediction(eps_m, eps_p, delta, h, b.mode(i), b.mode(j));
  const auto inv = fourier_from_cgpt(table, eps_m, eps_p, delta, N);
  for (int k = -N; k <= N; ++k) CHECK(std::abs(inv.coefficients(k) - h(k)) < 1e-12);
  CHECK(inv.coefficients.conjugation_defect() == 0.0);
  CHECK(!inv.pairs[static_cast<std::size_t>(N)].empty());
}

TEST_CASE("synthesis and projection") {
  FourierCoefficients c(4);
  c.at(0) = 1.0;
  c.at(1) = c.at(-1) = 0.5;
  c.at(2) = c.at(-2) = 0.25;
  const auto theta = uniform_theta_grid(32);
  const auto even = synthesize_even(c, 4, theta), full = synthesize_full(c, 4, theta);
  for (std::size_t j = 0; j < theta.size(); ++j) {
    CHECK(even[j] == doctest::Approx(1.0 + 0.5 * std::cos(2 * theta[j])));
    CHECK(full[j] == doctest::Approx(1.0 + std::cos(theta[j]) + 0.5 * std::cos(2 * theta[j])));
  }
  const auto back = dft(even);
  CHECK(std::abs(back(2) - 0.25) < 1e-14);
  CHECK(std::abs(back(1)) < 1e-14);
  const auto p = projection(c, 4, true);
  CHECK(p(1) == cplx{});
  CHECK(p(2) == c(2));
}

TEST_CASE("error metrics") {
  const std::vector<double> t{1.0, -2.0, 0.5};
  CHECK(error_metrics(t, t).rel_l2 == 0.0);
  std::vector<double> shifted = t;
  for (double& v : shifted) v += 0.1;
  CHECK(error_metrics(shifted, t).rel_linf == doctest::Approx(0.1 / 2.0));
  const std::vector<double> zero(3, 0.0);
  CHECK(error_metrics(shifted, zero).rel_l2 > 0.0);
  CHECK_THROWS_AS(error_metrics(t, std::vector<double>{1.0}), InputError);
}
