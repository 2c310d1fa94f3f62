#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gsqg/error.hpp"
#include "gsqg/fractional.hpp"
#include "gsqg/random_field.hpp"
#include "oracles.hpp"

using namespace gsqg;
using std::numbers::pi;
using std::numbers::sqrt2;

TEST_CASE("fractional Laplacian") {
  const GridPtr g = Grid::create(GridSpec{64});
  const SpectralField c1 = single_mode_field(g, 1, 0);
  for (double sigma : {-1.5, -0.3, 0.0, 0.7, 2.0}) CHECK(l2_norm(fractional_laplacian(c1, sigma) - c1) <= 1e-15);
  const SpectralField c2 = single_mode_field(g, 0, 2);
  CHECK(l2_norm(fractional_laplacian(c2, 0.5) - sqrt2 * c2) <= 1e-14);

  const SpectralField f = random_band_field(g, RandomBand{1.0, 40.0}, 3);
  CHECK(l2_norm(fractional_laplacian(fractional_laplacian(f, 1.0), -1.0) - f) <= 1e-13 * l2_norm(f));
  CHECK(l2_norm(fractional_laplacian(fractional_laplacian(f, 0.3), 0.4) - fractional_laplacian(f, 0.7)) <=
        1e-13 * l2_norm(fractional_laplacian(f, 0.7)));

  std::vector<Complex> with_mean(f.coefficients().begin(), f.coefficients().end());
  with_mean[0] = 2.0;
  const SpectralField m = SpectralField::from_coefficients(g, with_mean);
  CHECK_THROWS_AS(fractional_laplacian(m, -0.5), SingularModeError);
  CHECK_NOTHROW(fractional_laplacian(m, 0.5));
}

TEST_CASE("Sobolev norms") {
  const GridPtr g = Grid::create(GridSpec{64});
  const SpectralField c1 = single_mode_field(g, 1, 0);
  CHECK(homogeneous_norm(c1, 0.0) == doctest::Approx(pi * sqrt2).epsilon(1e-15));
  for (double sigma : {-1.0, 0.5, 2.1, 3.0}) CHECK(homogeneous_norm(c1, sigma) == doctest::Approx(pi * sqrt2).epsilon(1e-15));
  CHECK(homogeneous_norm(single_mode_field(g, 0, 2), 1.0) == doctest::Approx(2 * pi * sqrt2).epsilon(1e-15));
  CHECK(inhomogeneous_norm(c1, 1.0) == doctest::Approx(2 * pi).epsilon(1e-15));
  CHECK_THROWS_AS(inhomogeneous_norm(c1, -0.5), DomainError);

  const SpectralField f = random_band_field(g, RandomBand{1.0, 40.0}, 9);
  const oracle::Coefficients c = oracle::sparse(f);
  for (double sigma : {-0.7, 0.0, 1.3, 2.1}) {
    CHECK(homogeneous_norm(f, sigma) ==
          doctest::Approx(std::sqrt(oracle::weighted_energy(c, sigma, 1.0, 2 * pi))).epsilon(1e-13));
  }
  const double hs = homogeneous_norm(f, 2.1), l2 = homogeneous_norm(f, 0.0);
  CHECK(inhomogeneous_norm(f, 2.1) == doctest::Approx(std::sqrt(hs * hs + l2 * l2)).epsilon(1e-14));
  CHECK(homogeneous_norm(SpectralField(g), 1.0) == 0.0);
}

TEST_CASE("heat semigroup") {
  const GridPtr g = Grid::create(GridSpec{64});
  const SpectralField f = random_band_field(g, RandomBand{1.0, 20.0}, 2);
  CHECK(l2_norm(heat_semigroup(f, 0.0, 0.4) - f) == 0.0);
  const SpectralField c1 = single_mode_field(g, 1, 0);
  for (double a : {0.1, 0.25, 0.9}) CHECK(l2_norm(heat_semigroup(c1, 0.7, a) - std::exp(-0.7) * c1) <= 1e-15);
  const SpectralField c2 = single_mode_field(g, 0, 2);
  CHECK(l2_norm(heat_semigroup(c2, 1.0, 0.25) - std::exp(-sqrt2) * c2) <= 1e-15);
  CHECK(l2_norm(heat_semigroup(heat_semigroup(f, 0.3, 0.25), 0.2, 0.25) - heat_semigroup(f, 0.5, 0.25)) <= 1e-14);
  CHECK_THROWS_AS(heat_semigroup(f, -1.0, 0.25), DomainError);
}

TEST_CASE("frequency split") {
  const GridPtr g = Grid::create(GridSpec{64});
  const SpectralField f = two_mode_field(g);
  FrequencySplit s = split_frequencies(f, 0.5);
  CHECK(s.low.is_zero());
  CHECK(l2_norm(s.high - f) == 0.0);
  s = split_frequencies(f, 100.0);
  CHECK(s.high.is_zero());
  s = split_frequencies(f, 1.5);
  CHECK(l2_norm(s.low - single_mode_field(g, 1, 0)) == 0.0);
  CHECK(l2_norm(s.high - single_mode_field(g, 0, 2)) == 0.0);
  CHECK_THROWS_AS(split_frequencies(f, 0.0), DomainError);
}

TEST_CASE("interpolation margin") {
  const GridPtr g = Grid::create(GridSpec{64});
  CHECK(std::abs(check_interpolation(single_mode_field(g, 1, 0), 0.25, 1.6)) <= 1e-12);
  SpectralField two = single_mode_field(g, 0, 2);
  two *= 1.0 / homogeneous_norm(two, 2.1);
  CHECK(std::abs(check_interpolation(two, 0.25, 1.6)) <= 1e-12);
  CHECK(check_interpolation(two_mode_field(g), 0.25, 1.6) > 0.0);
  CHECK_THROWS_AS(check_interpolation(SpectralField(g), 0.25, 1.6), UndefinedError);
  for (std::uint64_t s = 0; s < 50; ++s) {
    CHECK(check_interpolation(random_band_field(g, RandomBand{1.0, 45.0}, s), 0.1, 1.3) >= -1e-10);
  }
}
