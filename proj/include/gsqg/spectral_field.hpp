#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gsqg/error.hpp"
#include "gsqg/grid.hpp"

namespace gsqg {

using Complex = std::complex<double>;

/// Real scalar samples on the n x n grid, row-major (x1 index outer).
struct PhysicalField {
  GridPtr grid;
  std::vector<double> samples;

  double at(int i1, int i2) const { return samples[grid->flat(i1, i2)]; }
};

/// Fourier coefficients of a real scalar on the torus.
///
/// Producing operations keep the field Hermitian (c(-k) = conj c(k)), finite and mean-zero.
/// A field built directly from coefficients is checked for finiteness and Hermitian symmetry;
/// its mean is kept so that operations singular at k = 0 can report it.
class SpectralField {
 public:
  explicit SpectralField(GridPtr grid);

  /// Throws InvalidFieldError on non-finite entries or broken Hermitian symmetry.
  static SpectralField from_coefficients(GridPtr grid, std::vector<Complex> coeffs);
  /// No validation; for operations that construct the coefficients correctly themselves.
  static SpectralField adopt(GridPtr grid, std::vector<Complex> coeffs);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  std::span<Complex> mutable_coefficients() noexcept { return coeffs_; }

  Complex coeff(int m1, int m2) const { return coeffs_[grid_->flat_of_modes(m1, m2)]; }
  Complex mean() const noexcept { return coeffs_[0]; }
  bool has_zero_mean() const noexcept { return coeffs_[0] == Complex(0.0, 0.0); }
  bool is_finite() const noexcept;
  bool is_zero() const noexcept;
  /// max_k |c(k) - conj c(-k)|.
  double hermitian_residual() const noexcept;
  double max_abs_coefficient() const noexcept;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }

 private:
  SpectralField(GridPtr grid, std::vector<Complex> coeffs);
  void require_same_grid(const SpectralField& other) const;

  GridPtr grid_;
  std::vector<Complex> coeffs_;
};

/// Result of a forward transform: the mean-zero field plus the mean that was removed.
struct SpectralTransform {
  SpectralField field;
  double mean = 0.0;
  /// True when |mean| exceeded 1e-12 and was therefore worth reporting.
  bool mean_removed = false;
};

PhysicalField to_physical(const SpectralField& f);
SpectralTransform to_spectral(const PhysicalField& samples);
/// Samples a function of (x1, x2) at the grid nodes.
PhysicalField sample(const GridPtr& grid, const std::function<double(double, double)>& fn);

using Multiplier = std::function<Complex(const Wavevector&)>;

/// coeff_out(k) = m(k) coeff_in(k) on every nonzero lattice point; the k = 0 mode is left at 0
/// and m is never evaluated there. Throws InvalidFieldError naming k if m(k) is not finite.
SpectralField apply_multiplier(const SpectralField& f, const Multiplier& m);
/// Same contract for a real radial multiplier m(|k|).
SpectralField apply_radial_multiplier(const SpectralField& f, const std::function<double(double)>& m);

/// Zero every mode outside the dealias mask.
SpectralField dealias(const SpectralField& f);

/// Zeroes the Nyquist row and column so that odd multipliers keep the field real.
void clear_nyquist(std::span<Complex> coeffs, const Grid& grid);

/// <f, g>_{L2} = period^2 sum_k f(k) conj g(k).
double inner_product(const SpectralField& f, const SpectralField& g);
double l2_norm(const SpectralField& f);
/// sum over grid of f^2 * cell area.
double physical_l2_norm_squared(const PhysicalField& f);
double max_abs(const PhysicalField& f);

}  // namespace gsqg
