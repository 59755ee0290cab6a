#include <doctest.h>

#include <cmath>
#include <random>

#include "nearfield/conformal.hpp"
#include "nearfield/errors.hpp"

using namespace nearfield;

TEST_CASE("conformal modulus closed forms") {
  const ProbeGeometry g(2.0, 1.0);
  CHECK(std::abs(std::exp(2.0 * g.s()) - (7.0 + 4.0 * std::sqrt(3.0))) < 1e-12);
  CHECK(std::abs(g.c() - std::sqrt(3.0)) < 1e-15);
  const ProbeGeometry e1(1.04, 1.0);
  const double c = std::sqrt(1.04 * 1.04 - 1.0);
  CHECK(std::abs(e1.s() - std::log(1.04 + c)) < 1e-15);
  CHECK(std::abs(std::sinh(e1.s()) - c) < 1e-14);
  CHECK(std::abs(e1.s() - 0.281908289) < 1e-9);
  CHECK_THROWS_AS(ProbeGeometry(1.0, 1.0), DomainError);
}

TEST_CASE("mobius map properties") {
  const ProbeGeometry g(1.04, 1.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    CHECK(std::abs(std::abs(mobius_forward(cplx(x, 0.0), g)) - 1.0) < 1e-12);
    const cplx zp = cplx(0.0, g.d()) + std::polar(g.r_particle(), 2.0 * kPi * i / 200.0);
    CHECK(std::abs(std::abs(mobius_forward(zp, g)) - std::exp(g.s())) < 1e-10);
    const cplx z(u(rng), u(rng));
    if (std::abs(z - cplx(0.0, g.c())) < 1e-2) continue;
    CHECK(std::abs(mobius_inverse(mobius_forward(z, g), g) - z) < 1e-12 * (1.0 + std::abs(z)));
    CHECK(std::abs(mobius_forward(-std::conj(z), g) - std::conj(mobius_forward(z, g))) < 1e-12 * (1.0 + std::abs(z)));
  }
  CHECK(std::abs(mobius_inverse(cplx(-1.0, 0.0), g)) < 1e-15);
  CHECK_THROWS_AS(mobius_inverse(cplx(1.0, 0.0), g), PoleError);
}

TEST_CASE("profiles vanish outside the support and respect evenness") {
  const PlaneProfile p(GaussianBumps{{-0.3, 0.3}, {0.1, 0.1}, {-1.0, -1.0}}, 0.8, 0.05, true);
  CHECK(p.evaluate(0.81) == 0.0);
  CHECK(p.evaluate(-2.0) == 0.0);
  for (double x : {0.05, 0.2, 0.37, 0.6}) CHECK(p.evaluate(x) == doctest::Approx(p.evaluate(-x)));
}

TEST_CASE("flat plane pushes forward to zero") {
  const auto h = pushforward_profile(PlaneProfile::flat(), ProbeGeometry(2.0), 64);
  for (double v : h.samples) CHECK(v == 0.0);
}

TEST_CASE("pushforward then pullback round trip") {
  const ProbeGeometry g(1.04, 1.0);
  const PlaneProfile p(PiecewiseConstant{{{-0.28, -0.2}, {-0.12, -0.04}, {0.04, 0.12}, {0.2, 0.28}}, -1.0}, 0.4, 0.01,
                       true);
  const auto h = pushforward_profile(p, g, 1024);
  CHECK(h.fourier.conjugation_defect() < 1e-14);
  CHECK(h.fourier.max_imag() < 1e-12);
  const auto curve = pullback_curve(h, g, 1.2);
  REQUIRE(curve.size() > 100);
  double worst = 0.0;
  for (const auto& pt : curve) {
    // Points on the vertical walls sit at the jump abscissae.
    double wall = 1.0;
    for (double b : p.breakpoints()) wall = std::min(wall, std::abs(pt.x - b));
    if (wall < 1e-9) continue;
    worst = std::max(worst, std::abs(pt.height - 0.01 * p.evaluate(pt.x)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("pullback of theta = pi with zero perturbation is the origin") {
  const auto pt = pullback_point(kPi, 0.0, 0.01, ProbeGeometry(1.04));
  CHECK(std::abs(pt.x) < 1e-14);
  CHECK(std::abs(pt.height) < 1e-14);
}
