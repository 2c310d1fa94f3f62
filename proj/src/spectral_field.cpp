#include "gsqg/spectral_field.hpp"

#include <algorithm>
#include <cmath>

namespace gsqg {

namespace {

void require_finite_samples(std::span<const double> samples) {
  for (double v : samples) {
    if (!std::isfinite(v)) throw InvalidFieldError("physical samples contain a non-finite value");
  }
}

}  // namespace

SpectralField::SpectralField(GridPtr grid) : grid_(std::move(grid)) {
  coeffs_.assign(grid_->size(), Complex(0.0, 0.0));
}

SpectralField::SpectralField(GridPtr grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {}

SpectralField SpectralField::adopt(GridPtr grid, std::vector<Complex> coeffs) {
  return SpectralField(std::move(grid), std::move(coeffs));
}

SpectralField SpectralField::from_coefficients(GridPtr grid, std::vector<Complex> coeffs) {
  if (coeffs.size() != grid->size()) {
    throw InvalidFieldError("coefficient array has " + std::to_string(coeffs.size()) +
                            " entries, grid needs " + std::to_string(grid->size()));
  }
  SpectralField f(std::move(grid), std::move(coeffs));
  if (!f.is_finite()) throw InvalidFieldError("field contains non-finite coefficients");
  const double scale = std::max(1.0, f.max_abs_coefficient());
  if (f.hermitian_residual() > 1e-12 * scale) {
    throw InvalidFieldError("coefficients are not Hermitian symmetric; field would not be real");
  }
  return f;
}

bool SpectralField::is_finite() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

bool SpectralField::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& z) { return z == Complex(0.0, 0.0); });
}

double SpectralField::hermitian_residual() const noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    worst = std::max(worst, std::abs(coeffs_[i] - std::conj(coeffs_[grid_->partner(i)])));
  }
  return worst;
}

double SpectralField::max_abs_coefficient() const noexcept {
  double worst = 0.0;
  for (const Complex& z : coeffs_) worst = std::max(worst, std::abs(z));
  return worst;
}

void SpectralField::require_same_grid(const SpectralField& other) const {
  if (grid_ != other.grid_ && grid_->spec() != other.grid_->spec()) {
    throw ConfigError("fields live on different grids");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (Complex& z : coeffs_) z *= s;
  return *this;
}

PhysicalField to_physical(const SpectralField& f) {
  if (!f.is_finite()) throw InvalidFieldError("cannot transform a field with non-finite coefficients");
  PhysicalField out{f.grid_ptr(), std::vector<double>(f.grid().size())};
  f.grid().inverse(f.coefficients(), out.samples);
  return out;
}

SpectralTransform to_spectral(const PhysicalField& samples) {
  const Grid& grid = *samples.grid;
  if (samples.samples.size() != grid.size()) {
    throw InvalidFieldError("sample array does not match the grid");
  }
  require_finite_samples(samples.samples);
  std::vector<Complex> coeffs(grid.size());
  grid.forward(samples.samples, coeffs);
  const double mean = coeffs[0].real();
  coeffs[0] = Complex(0.0, 0.0);
  SpectralTransform out{SpectralField::adopt(samples.grid, std::move(coeffs)), mean, std::abs(mean) > 1e-12};
  return out;
}

PhysicalField sample(const GridPtr& grid, const std::function<double(double, double)>& fn) {
  PhysicalField out{grid, std::vector<double>(grid->size())};
  const double h = grid->spacing();
  for (int i1 = 0; i1 < grid->n(); ++i1) {
    for (int i2 = 0; i2 < grid->n(); ++i2) {
      out.samples[grid->flat(i1, i2)] = fn(i1 * h, i2 * h);
    }
  }
  return out;
}

SpectralField apply_multiplier(const SpectralField& f, const Multiplier& m) {
  const Grid& grid = f.grid();
  std::vector<Complex> out(grid.size(), Complex(0.0, 0.0));
  auto in = f.coefficients();
  for (std::size_t i = 1; i < out.size(); ++i) {
    const Wavevector k = grid.wavevector(i);
    const Complex factor = m(k);
    if (!std::isfinite(factor.real()) || !std::isfinite(factor.imag())) {
      throw InvalidFieldError("multiplier is not finite at k = (" + std::to_string(k.m1) + ", " +
                              std::to_string(k.m2) + ")");
    }
    out[i] = factor * in[i];
  }
  return SpectralField::adopt(f.grid_ptr(), std::move(out));
}

SpectralField apply_radial_multiplier(const SpectralField& f, const std::function<double(double)>& m) {
  const Grid& grid = f.grid();
  std::vector<Complex> out(grid.size(), Complex(0.0, 0.0));
  auto in = f.coefficients();
  auto kmag = grid.kmag();
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double factor = m(kmag[i]);
    if (!std::isfinite(factor)) {
      const Wavevector k = grid.wavevector(i);
      throw InvalidFieldError("multiplier is not finite at k = (" + std::to_string(k.m1) + ", " +
                              std::to_string(k.m2) + ")");
    }
    out[i] = factor * in[i];
  }
  return SpectralField::adopt(f.grid_ptr(), std::move(out));
}

SpectralField dealias(const SpectralField& f) {
  auto mask = f.grid().dealias_mask();
  std::vector<Complex> out(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!mask[i]) out[i] = Complex(0.0, 0.0);
  }
  return SpectralField::adopt(f.grid_ptr(), std::move(out));
}

void clear_nyquist(std::span<Complex> coeffs, const Grid& grid) {
  auto ny = grid.nyquist();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (ny[i]) coeffs[i] = Complex(0.0, 0.0);
  }
}

double inner_product(const SpectralField& f, const SpectralField& g) {
  auto a = f.coefficients();
  auto b = g.coefficients();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] * std::conj(b[i])).real();
  const double p = f.grid().period();
  return p * p * sum;
}

double l2_norm(const SpectralField& f) {
  double sum = 0.0;
  for (const Complex& z : f.coefficients()) sum += std::norm(z);
  return f.grid().period() * std::sqrt(sum);
}

double physical_l2_norm_squared(const PhysicalField& f) {
  double sum = 0.0;
  for (double v : f.samples) sum += v * v;
  return sum * f.grid->cell_area();
}

double max_abs(const PhysicalField& f) {
  double worst = 0.0;
  for (double v : f.samples) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace gsqg
