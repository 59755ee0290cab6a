#include <doctest.h>

#include <cmath>

#include "nearfield/conformal.hpp"
#include "nearfield/curve.hpp"
#include "nearfield/errors.hpp"
#include "nearfield/gpt.hpp"
#include "nearfield/pipeline.hpp"
#include "nearfield/spectral.hpp"

using namespace nearfield;

namespace {

FourierCoefficients cos2_plus_cos4() {
  FourierCoefficients h(4);
  h.at(2) = h.at(-2) = 0.5;
  h.at(4) = h.at(-4) = 0.5;
  return h;
}

}  // namespace

TEST_CASE("unperturbed doublet values") {
  const double s = ProbeGeometry(2.0).s();
  CHECK(unperturbed_eigenvalue(1, s, 1.0).real() == doctest::Approx(-0.0179492).epsilon(1e-6));
  CHECK(unperturbed_eigenvalue(2, s, 1.0).real() == doctest::Approx(-0.00128875).epsilon(1e-5));
  CHECK(unperturbed_eigenvalue(-2, s, 1.0) == unperturbed_eigenvalue(2, s, 1.0));
}

TEST_CASE("flat plane gives a diagonal operator with degenerate doublets") {
  const double s = ProbeGeometry(1.04).s();
  const int N = 8;
  const auto A = assemble_exact_A(compute_cgpt(make_circle(300, 1.0), 1.0, N), s, N);
  const SignedBasis b(N);
  Eigen::MatrixXcd off = A.matrix;
  for (int i = 0; i < b.size(); ++i) {
    CHECK(std::abs(A.matrix(i, i) - unperturbed_eigenvalue(b.mode(i), s, 1.0)) < 1e-12);
    off(i, i) = 0.0;
  }
  CHECK(off.cwiseAbs().maxCoeff() < 1e-12);
  const auto cl = match_clusters(eigendecompose(A), s, 1.0, 0.0);
  for (const auto& c : cl.clusters) {
    CHECK(c.degenerate);
    CHECK(c.valid);
    CHECK(c.shift_plus == 0.0);
  }
  CHECK_THROWS_AS(assemble_exact_A(compute_cgpt(make_circle(128, 1.0), 1.0, 4), s, 8), InputError);
}

TEST_CASE("exact and direct assembly agree") {
  const double s = ProbeGeometry(1.5).s();
  const auto curve = make_perturbed_circle(256, cos2_plus_cos4(), 0.02);
  const auto exact = assemble_exact_A(compute_cgpt(curve, 1.0, 6), s, 6);
  const auto direct = assemble_direct_A(curve, s, 1.0, 6);
  CHECK((exact.matrix - direct.matrix).cwiseAbs().maxCoeff() < 1e-9 * exact.matrix.cwiseAbs().maxCoeff());
  CHECK_THROWS_AS(DirectCouplingOperator(make_circle(64, 3.0), s, 1.0, 4), GeometryError);
}

TEST_CASE("asymptotic assembly matches the exact operator to first order") {
  const double s = ProbeGeometry(1.5).s();
  const double delta = 1e-3;
  const auto h = cos2_plus_cos4();
  const int N = 6;
  const auto A0 = assemble_exact_A(compute_cgpt(make_circle(300, 1.0), 1.0, N), s, N);
  const auto Ad = assemble_exact_A(compute_cgpt(make_perturbed_circle(300, h, delta), 1.0, N), s, N);
  const auto Aa = assemble_asymptotic_A(h, s, 1.0, 3.0, 1.0, delta, N);
  const Eigen::MatrixXcd first = Ad.matrix - A0.matrix;
  // Entrywise agreement pins the orientation of the off-diagonal blocks.
  CHECK((Ad.matrix - Aa.matrix).cwiseAbs().maxCoeff() <= 0.02 * first.cwiseAbs().maxCoeff());
  CHECK_THROWS_AS(assemble_asymptotic_A(h, s, 2.0, 3.0, 1.0, delta, N), InputError);
}

TEST_CASE("eigenvalues are real, bounded and stable under truncation") {
  for (const auto& name : bundled_config_names()) {
  const auto cfg = bundled_config(name);
  const ProbeGeometry g(cfg.d, cfg.r_particle);
  const auto h = pushforward_profile(cfg.profile, g, cfg.M);
  const auto curve = perturbed_boundary(cfg.M, h.fourier, cfg.profile.delta(), cfg.geometry_cutoff);
  const auto cg = compute_cgpt(curve, 1.0, 2 * cfg.N_mat);
  const auto small = eigendecompose(assemble_exact_A(cg, g.s(), cfg.N_mat));
  const auto large = eigendecompose(assemble_exact_A(cg, g.s(), 2 * cfg.N_mat));
  CHECK(small.max_imag <= 1e-8);
  for (const auto& p : large.pairs) CHECK(std::abs(p.value) <= 0.5 + 1e-6);
  const auto cs = match_clusters(small, g.s(), 1.0, cfg.profile.delta());
  const auto cl = match_clusters(large, g.s(), 1.0, cfg.profile.delta());
  for (int n = 1; n <= cfg.N / 2; ++n) {
    CHECK(std::abs(cs.at(n).lambda_plus - cl.at(n).lambda_plus) < 1e-10);
    CHECK(std::abs(cs.at(n).lambda_minus - cl.at(n).lambda_minus) < 1e-10);
    CHECK(cs.at(n).overlap_quality >= 0.9);
    // O(delta) with the constant of the first-order bound, doubled.
    const double bound = 2.0 * cfg.profile.delta() * n * std::abs(cs.at(n).lambda0) *
                         (2.0 * std::abs(h.fourier(0)) + std::abs(h.fourier(2 * n)));
    CHECK(std::abs(cs.at(n).lambda_plus - cs.at(n).lambda0) <= bound);
    CHECK(std::abs(cs.at(n).lambda_minus - cs.at(n).lambda0) <= bound);
  }
  CHECK(cs.usable_order >= cfg.N / 2);
  }
}

TEST_CASE("first-order shifts of planted coefficients") {
  const double s = std::log(2.0 + std::sqrt(3.0));
  FourierCoefficients h(2);
  h.at(0) = 0.3;
  h.at(2) = h.at(-2) = 0.1;
  const auto sh = first_order_shifts(h, s, 1.0, 1);
  CHECK(sh[0].plus == doctest::Approx(-0.0125646).epsilon(1e-5));
  CHECK(sh[0].minus == doctest::Approx(-0.0089746).epsilon(1e-5));
}

TEST_CASE("matched shifts follow first-order theory at small delta") {
  const double s = ProbeGeometry(1.2).s();
  const auto h = cos2_plus_cos4();
  const double delta = 1e-3;
  const int N = 8;
  const auto A = assemble_exact_A(compute_cgpt(make_perturbed_circle(300, h, delta), 1.0, N), s, N);
  const auto cl = match_clusters(eigendecompose(A), s, 1.0, delta);
  const auto pred = first_order_shifts(h, s, 1.0, 3);
  for (int n = 1; n <= 2; ++n) {
    CHECK(cl.at(n).shift_plus == doctest::Approx(pred[n - 1].plus).epsilon(0.02));
    CHECK(cl.at(n).shift_minus == doctest::Approx(pred[n - 1].minus).epsilon(0.02));
  }
}
