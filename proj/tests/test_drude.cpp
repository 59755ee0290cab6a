#include <doctest.h>

#include <cmath>

#include "nearfield/drude.hpp"
#include "nearfield/errors.hpp"

using namespace nearfield;

TEST_CASE("contrast of a Drude particle in vacuum") {
  const DrudeMaterial mat{1.0, 1.0, 1e-3, 1.0};
  for (double w : {0.3, 0.6, 0.7, 1.4}) {
    const cplx oracle = w * cplx(w, mat.gamma) / (mat.omega_p * mat.omega_p) - 0.5;
    CHECK(std::abs(drude_contrast(w, mat) - oracle) < 1e-12);
    CHECK(drude_permittivity(w, mat).imag() > 0.0);
  }
  CHECK(drude_permittivity(0.5, mat).real() < 0.0);
  CHECK_THROWS_AS(drude_permittivity(0.0, mat), DomainError);
}

TEST_CASE("resonance frequency inverts the lossless contrast") {
  const DrudeMaterial mat{1.0, 2.0, 0.0, 1.0};
  for (double lam : {-0.3, -0.0179, 0.1}) {
    const double w = resonance_frequency(lam, mat);
    CHECK(drude_contrast(w, mat).real() == doctest::Approx(lam).epsilon(1e-12));
  }
}

TEST_CASE("single planted mode is recovered") {
  const DrudeMaterial mat{1.0, 1.0, 1e-3, 1.0};
  const std::vector<ScanMode> modes{{-0.0179, 1.0}};
  const auto scan = resonance_scan(modes, mat, resonance_grid({-0.0179}, mat, 2000));
  REQUIRE(scan.peaks.size() == 1);
  CHECK(!scan.low_confidence);
  CHECK(std::abs(scan.peaks[0].lambda + 0.0179) <= 2.0 * scan.peaks[0].lambda_resolution);
  CHECK(std::abs(scan.peaks[0].lambda) < 0.5);
}

TEST_CASE("two modes ten linewidths apart are resolved") {
  const DrudeMaterial mat{1.0, 1.0, 1e-3, 1.0};
  const double lw = drude_contrast(resonance_frequency(-0.05, mat), mat).imag();
  const std::vector<double> lams{-0.05, -0.05 + 10.0 * lw};
  const auto scan = resonance_scan({{lams[0], 1.0}, {lams[1], 1.0}}, mat, resonance_grid(lams, mat, 2000));
  CHECK(scan.peaks.size() == 2);
}

TEST_CASE("heavy loss is flagged") {
  const DrudeMaterial mat{1.0, 1.0, 0.3, 1.0};
  const std::vector<double> lams{-0.14, -0.08, -0.046};
  std::vector<ScanMode> modes;
  for (double l : lams) modes.push_back({l, 1.0});
  CHECK(resonance_scan(modes, mat, resonance_grid(lams, mat, 2000)).low_confidence);
}

TEST_CASE("scan input validation") {
  const DrudeMaterial mat{1.0, 1.0, 1e-3, 1.0};
  CHECK_THROWS_AS(resonance_scan({{-0.1, 1.0}}, mat, {0.5, 0.4, 0.6}), InputError);
  CHECK_THROWS_AS(resonance_scan({{-0.1, 0.0}}, mat, resonance_grid({-0.1}, mat, 100)), InputError);
}
