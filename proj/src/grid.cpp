#include "gsqg/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "gsqg/error.hpp"

namespace gsqg {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <typename T>
struct FftwDeleter {
  void operator()(T* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter<T>>;

FftwBuffer<double> alloc_real(std::size_t count) {
  return FftwBuffer<double>(fftw_alloc_real(count));
}

FftwBuffer<fftw_complex> alloc_complex(std::size_t count) {
  return FftwBuffer<fftw_complex>(fftw_alloc_complex(count));
}

}  // namespace

void GridSpec::validate() const {
  if (n < 8 || n % 2 != 0) {
    throw ConfigError("grid.n must be an even integer >= 8, got " + std::to_string(n));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ConfigError("grid.period must be a positive finite number");
  }
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw ConfigError("grid.dealias_fraction must lie in (0, 1]");
  }
}

GridPtr Grid::create(const GridSpec& spec) {
  spec.validate();
  return GridPtr(new Grid(spec));
}

Grid::Grid(const GridSpec& spec) : spec_(spec), unit_(2.0 * std::numbers::pi / spec.period) {
  const int n = spec_.n;
  const std::size_t total = size();
  k1_.resize(total);
  k2_.resize(total);
  kmag_.resize(total);
  mask_.resize(total);
  nyquist_.resize(total);

  const double limit = spec_.dealias_fraction * (n / 2);
  mask_cutoff_ = 0;
  for (int m = 0; m <= n / 2; ++m) {
    if (m <= limit) mask_cutoff_ = m;
  }

  k_max_ = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    const int m1 = mode(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const int m2 = mode(i2);
      const std::size_t idx = flat(i1, i2);
      k1_[idx] = unit_ * m1;
      k2_[idx] = unit_ * m2;
      kmag_[idx] = unit_ * std::sqrt(static_cast<double>(m1) * m1 + static_cast<double>(m2) * m2);
      mask_[idx] = std::max(std::abs(m1), std::abs(m2)) <= limit ? 1 : 0;
      nyquist_[idx] = (m1 == -n / 2 || m2 == -n / 2) ? 1 : 0;
      k_max_ = std::max(k_max_, kmag_[idx]);
    }
  }

  std::lock_guard<std::mutex> lock(planner_mutex());
  auto real = alloc_real(total);
  auto half = alloc_complex(static_cast<std::size_t>(n) * (n / 2 + 1));
  forward_plan_ = fftw_plan_dft_r2c_2d(n, n, real.get(), half.get(), FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_2d(n, n, half.get(), real.get(), FFTW_ESTIMATE);
}

Grid::~Grid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

std::size_t Grid::partner(std::size_t flat_index) const noexcept {
  const int n = spec_.n;
  const int i1 = static_cast<int>(flat_index / n);
  const int i2 = static_cast<int>(flat_index % n);
  return flat((n - i1) % n, (n - i2) % n);
}

Wavevector Grid::wavevector(std::size_t flat_index) const noexcept {
  const int n = spec_.n;
  return Wavevector{mode(static_cast<int>(flat_index / n)), mode(static_cast<int>(flat_index % n)),
                    k1_[flat_index], k2_[flat_index], kmag_[flat_index]};
}

void Grid::forward(std::span<const double> samples, std::span<std::complex<double>> coeffs) const {
  const int n = spec_.n;
  const int hc = n / 2 + 1;
  auto real = alloc_real(size());
  auto half = alloc_complex(static_cast<std::size_t>(n) * hc);
  std::copy(samples.begin(), samples.end(), real.get());
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), real.get(), half.get());

  const double scale = 1.0 / static_cast<double>(size());
  auto half_at = [&](int r, int c) {
    const fftw_complex& z = half[static_cast<std::size_t>(r) * hc + c];
    return std::complex<double>(z[0] * scale, z[1] * scale);
  };

  for (int r = 0; r < n; ++r) {
    const int rp = (n - r) % n;
    for (int c = 0; c < n; ++c) {
      std::complex<double> value;
      if (c == 0 || c == n / 2) {
        // Both k and -k live in the half array here; average so the pair is exactly conjugate.
        value = 0.5 * (half_at(r, c) + std::conj(half_at(rp, c)));
        if (rp == r) value = value.real();
      } else if (c < n / 2) {
        value = half_at(r, c);
      } else {
        value = std::conj(half_at(rp, n - c));
      }
      coeffs[flat(r, c)] = value;
    }
  }
}

void Grid::inverse(std::span<const std::complex<double>> coeffs, std::span<double> samples) const {
  const int n = spec_.n;
  const int hc = n / 2 + 1;
  auto real = alloc_real(size());
  auto half = alloc_complex(static_cast<std::size_t>(n) * hc);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < hc; ++c) {
      const std::complex<double> z = coeffs[flat(r, c)];
      fftw_complex& h = half[static_cast<std::size_t>(r) * hc + c];
      h[0] = z.real();
      h[1] = z.imag();
    }
  }
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), half.get(), real.get());
  std::copy(real.get(), real.get() + size(), samples.begin());
}

}  // namespace gsqg
