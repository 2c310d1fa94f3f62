#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gsqg/error.hpp"
#include "gsqg/littlewood_paley.hpp"
#include "gsqg/random_field.hpp"
#include "oracles.hpp"

using namespace gsqg;

TEST_CASE("profile functions against the independent construction") {
  for (double r = 0.0; r <= 3.0; r += 0.0137) {
    CHECK(lp::cutoff(r) == doctest::Approx(oracle::cutoff(r)).epsilon(1e-14));
    CHECK(lp::annulus_bump(r) == doctest::Approx(oracle::annulus(r)).epsilon(1e-14));
    CHECK(lp::ball_bump(r) == doctest::Approx(oracle::cutoff(2 * r)).epsilon(1e-14));
  }
  CHECK(lp::cutoff(1.0) == 1.0);
  CHECK(lp::cutoff(2.0) == 0.0);
  CHECK(lp::cutoff(1.5) == doctest::Approx(0.5));
  CHECK(lp::annulus_bump(0.5) == 0.0);
  CHECK(lp::annulus_bump(2.0) == 0.0);
  CHECK(lp::annulus_bump(1.0) == 1.0);
  // Monotone decreasing transition.
  for (double r = 1.0; r < 2.0; r += 0.01) CHECK(lp::cutoff(r + 0.01) <= lp::cutoff(r));
}

TEST_CASE("block range on the standard grid") {
  const LPProjector p(Grid::create(GridSpec{64}));
  CHECK(p.j_min() == 0);
  CHECK(p.j_max() == 6);
  CHECK(p.in_range(3));
  CHECK_FALSE(p.in_range(7));
  CHECK_THROWS_AS(p.phi_table(7), RangeError);
  CHECK_THROWS_AS(p.phi_table(-1), RangeError);
  CHECK(p.partition_residual() <= 1e-15);

  // A larger period moves the lowest lattice radius below 1.
  const LPProjector q(Grid::create(GridSpec{64, 8.0 * std::numbers::pi}));
  CHECK(q.j_min() == -2);
  CHECK(q.partition_residual() <= 1e-15);
  CHECK_THROWS_AS(LPProjector(Grid::create(GridSpec{4})), ConfigError);
}

TEST_CASE("partition tables") {
  const GridPtr g = Grid::create(GridSpec{64});
  const LPProjector p(g);
  const std::size_t one = g->flat_of_modes(1, 0);
  double sum = 0.0;
  for (int j = p.j_min(); j <= p.j_max(); ++j) sum += p.phi_table(j)[one];
  CHECK(sum == 1.0);
  const auto phi0 = p.phi_table(0), phi2 = p.phi_table(2);
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(phi0[i] * phi2[i] == 0.0);
  const std::size_t three = g->flat_of_modes(3, 0);
  CHECK(p.phi_table(1)[three] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.phi_table(2)[three] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("dyadic blocks") {
  const GridPtr g = Grid::create(GridSpec{64});
  const LPProjector p(g);
  SUBCASE("support exactly on |k| = 4 belongs to block 2 alone") {
    const SpectralField f = single_mode_field(g, 4, 0) + single_mode_field(g, 0, 4, 0.3);
    for (int j = p.j_min(); j <= p.j_max(); ++j) {
      const SpectralField b = block(f, j, p);
      if (j == 2) CHECK(l2_norm(b - f) == 0.0);
      else CHECK(b.is_zero());
    }
  }
  SUBCASE("blocks sum back to the field") {
    const SpectralField f = random_band_field(g, RandomBand{1.0, 45.0}, 4);
    SpectralField sum(g);
    for (int j = p.j_min(); j <= p.j_max(); ++j) sum += block(f, j, p);
    CHECK(l2_norm(sum - f) <= 1e-12 * l2_norm(f));
  }
  SUBCASE("zero in, zero out") { CHECK(block(SpectralField(g), 3, p).is_zero()); }
  SUBCASE("low-pass identities") {
    const SpectralField f = random_band_field(g, RandomBand{1.0, 45.0}, 5);
    for (int j = p.j_min(); j <= p.j_max(); ++j) {
      SpectralField sum = low_pass(f, j, p);
      for (int i = j; i <= p.j_max(); ++i) sum += block(f, i, p);
      CHECK(l2_norm(sum - f) <= 1e-12 * l2_norm(f));
    }
    CHECK(l2_norm(low_pass(f, p.j_max() + 1, p) - f) == 0.0);
    CHECK(low_pass(f, p.j_min() - 3, p).is_zero());
  }
}

TEST_CASE("norm equivalence ratio") {
  const GridPtr g = Grid::create(GridSpec{64});
  const LPProjector p(g);
  CHECK(check_norm_equivalence(single_mode_field(g, 4, 0), p) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(check_norm_equivalence(single_mode_field(g, 3, 0), p) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(check_norm_equivalence(SpectralField(g), p), UndefinedError);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const SpectralField f = random_band_field(g, RandomBand{1.0, 45.0}, s);
    // Oracle: sum over the support of phi_j^2 evaluated from the independent profile.
    double num = 0.0, den = 0.0;
    for (std::size_t i = 1; i < g->size(); ++i) {
      const double c2 = std::norm(f.coefficients()[i]);
      const double k = g->wavevector(i).norm;
      double w = 0.0;
      for (int j = p.j_min(); j <= p.j_max(); ++j) w += std::pow(oracle::annulus(std::ldexp(k, -j)), 2);
      num += w * c2;
      den += c2;
    }
    const double r = check_norm_equivalence(f, p);
    CHECK(r == doctest::Approx(num / den).epsilon(1e-12));
    CHECK(r >= 0.5);
    CHECK(r <= 1.0);
  }
}

TEST_CASE("Bernstein inequalities") {
  const GridPtr g = Grid::create(GridSpec{64});
  const LPProjector p(g);
  SUBCASE("support on |k| = 2^j is tight") {
    const SpectralField f = single_mode_field(g, 8, 0);
    for (double sigma : {-1.0, 0.5, 1.6}) {
      const BernsteinCheck b = check_bernstein(f, 3, sigma, p);
      CHECK(b.operator_norm == doctest::Approx(b.reference_norm).epsilon(1e-14));
      CHECK(b.lower_ok);
      CHECK(b.upper_ok);
    }
  }
  SUBCASE("sigma = 0 is equality with constant 1") {
    const BernsteinCheck b = check_bernstein(random_band_field(g, RandomBand{1.0, 45.0}, 1), 4, 0.0, p);
    CHECK(b.constant == 1.0);
    CHECK(b.operator_norm == doctest::Approx(b.reference_norm).epsilon(1e-14));
    CHECK(b.lower_ok);
    CHECK(b.upper_ok);
  }
  SUBCASE("random field in A_3 with sigma = 1.1") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const BernsteinCheck b = check_bernstein(random_band_field(g, RandomBand{4.0, 16.0}, s), 3, 1.1, p);
      CHECK(b.constant == doctest::Approx(std::pow(2.0, 1.1)));
      CHECK(b.lower_ok);
      CHECK(b.upper_ok);
    }
  }
  SUBCASE("a block with empty support is undefined") {
    CHECK_THROWS_AS(check_bernstein(single_mode_field(g, 1, 0), 5, 1.0, p), UndefinedError);
  }
}
