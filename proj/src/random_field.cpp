#include "gsqg/random_field.hpp"

#include <cmath>

namespace gsqg {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SpectralField random_band_field(const GridPtr& grid, const RandomBand& band, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<Complex> coeffs(grid->size(), Complex(0.0, 0.0));

  const int half = grid->n() / 2;
  const int outer = static_cast<int>(std::ceil(band.k_hi / grid->unit()));
  for (int shell = 1; shell <= outer; ++shell) {
    for (int m1 = -shell; m1 <= shell; ++m1) {
      for (int m2 = 0; m2 <= shell; ++m2) {
        if (std::max(std::abs(m1), m2) != shell) continue;
        if (m2 == 0 && m1 <= 0) continue;  // one representative per conjugate pair
        const double re = uniform(rng);
        const double im = uniform(rng);
        if (std::abs(m1) >= half || m2 >= half) continue;
        if (band.max_mode >= 0 && shell > band.max_mode) continue;
        const double k = grid->unit() * std::hypot(static_cast<double>(m1), static_cast<double>(m2));
        if (k < band.k_lo || k > band.k_hi) continue;
        const double weight = std::pow(k, -band.slope);
        const std::size_t idx = grid->flat_of_modes(m1, m2);
        coeffs[idx] = weight * Complex(re, im);
        coeffs[grid->partner(idx)] = std::conj(coeffs[idx]);
      }
    }
  }
  return SpectralField::adopt(grid, std::move(coeffs));
}

SpectralField single_mode_field(const GridPtr& grid, int m1, int m2, double amplitude) {
  const int half = grid->n() / 2;
  if ((m1 == 0 && m2 == 0) || std::abs(m1) >= half || std::abs(m2) >= half) {
    throw RangeError("single mode (" + std::to_string(m1) + ", " + std::to_string(m2) +
                     ") is zero or not representable on the grid");
  }
  std::vector<Complex> coeffs(grid->size(), Complex(0.0, 0.0));
  const std::size_t idx = grid->flat_of_modes(m1, m2);
  coeffs[idx] += 0.5 * amplitude;
  coeffs[grid->partner(idx)] += 0.5 * amplitude;
  return SpectralField::adopt(grid, std::move(coeffs));
}

SpectralField two_mode_field(const GridPtr& grid, double amplitude) {
  return single_mode_field(grid, 1, 0, amplitude) + single_mode_field(grid, 0, 2, amplitude);
}

}  // namespace gsqg
