#pragma once

#include <cstdint>
#include <random>

#include "gsqg/spectral_field.hpp"

namespace gsqg {

/// Spectral band of a random test field.
struct RandomBand {
  /// Radial band k_lo <= |k| <= k_hi in physical wavenumbers.
  double k_lo = 1.0;
  double k_hi = 4.0;
  /// Coefficient magnitudes scale like |k|^(-slope).
  double slope = 0.0;
  /// Optional cap max(|m1|, |m2|) <= max_mode; negative means none.
  int max_mode = -1;
};

/// Deterministic per-trial seed derived from a master seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Random real mean-zero field supported in the band. Modes are drawn shell by shell in a
/// fixed order that does not depend on n, so the same seed on a finer grid reproduces the
/// coarse field and only adds modes the coarse grid cannot hold. Nyquist modes are never set.
SpectralField random_band_field(const GridPtr& grid, const RandomBand& band, std::uint64_t seed);

/// amplitude * cos(k . x) with k = unit * (m1, m2).
SpectralField single_mode_field(const GridPtr& grid, int m1, int m2, double amplitude = 1.0);
/// amplitude * (cos x1 + cos 2 x2) in lattice units.
SpectralField two_mode_field(const GridPtr& grid, double amplitude = 1.0);

}  // namespace gsqg
