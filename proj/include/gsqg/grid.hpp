#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace gsqg {

/// Resolution and geometry of the periodic square [0, period)^2.
struct GridSpec {
  int n = 64;
  double period = 2.0 * std::numbers::pi;
  double dealias_fraction = 2.0 / 3.0;

  /// Throws ConfigError naming the violated field.
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// One lattice point: integer mode (m1, m2) and physical wavevector k = (2 pi / period) m.
struct Wavevector {
  int m1;
  int m2;
  double k1;
  double k2;
  double norm;
};

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

/// Immutable wavevector lattice plus the FFT plans for one GridSpec.
///
/// Coefficients are stored in FFT order: flat index i1 * n + i2, where index i maps to the
/// signed mode m = i for i < n/2 and m = i - n otherwise, so m ranges over {-n/2, ..., n/2-1}.
/// Physical samples use the same row-major layout with x1 = i1 * h, x2 = i2 * h.
///
/// The transform convention is f(x) = sum_k c(k) exp(i k.x), so
/// ||f||_{L2}^2 = period^2 * sum_k |c(k)|^2.
///
/// Transforms are safe to call concurrently: plans are created once under a global lock and
/// executed through the new-array interface on call-local buffers.
class Grid {
 public:
  static GridPtr create(const GridSpec& spec);

  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  const GridSpec& spec() const noexcept { return spec_; }
  int n() const noexcept { return spec_.n; }
  double period() const noexcept { return spec_.period; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(spec_.n) * spec_.n; }
  double spacing() const noexcept { return spec_.period / spec_.n; }
  double cell_area() const noexcept { return spacing() * spacing(); }
  /// 2 pi / period: the physical length of one lattice step.
  double unit() const noexcept { return unit_; }

  int mode(int index) const noexcept { return index < spec_.n / 2 ? index : index - spec_.n; }
  int index(int mode) const noexcept { return mode >= 0 ? mode : mode + spec_.n; }
  std::size_t flat(int i1, int i2) const noexcept {
    return static_cast<std::size_t>(i1) * spec_.n + static_cast<std::size_t>(i2);
  }
  /// Flat index of the mode pair (m1, m2); both must lie in {-n/2, ..., n/2-1}.
  std::size_t flat_of_modes(int m1, int m2) const noexcept { return flat(index(m1), index(m2)); }
  /// Flat index of -k (mod the lattice).
  std::size_t partner(std::size_t flat_index) const noexcept;

  Wavevector wavevector(std::size_t flat_index) const noexcept;

  std::span<const double> k1() const noexcept { return k1_; }
  std::span<const double> k2() const noexcept { return k2_; }
  std::span<const double> kmag() const noexcept { return kmag_; }
  /// 1 where the mode survives dealiasing.
  std::span<const std::uint8_t> dealias_mask() const noexcept { return mask_; }
  /// 1 on the Nyquist row or column (m1 = -n/2 or m2 = -n/2).
  std::span<const std::uint8_t> nyquist() const noexcept { return nyquist_; }

  /// Largest |m| kept by the dealias mask.
  int mask_cutoff() const noexcept { return mask_cutoff_; }
  /// Smallest and largest |k| over the nonzero lattice.
  double k_min() const noexcept { return unit_; }
  double k_max() const noexcept { return k_max_; }

  /// Forward transform of n*n real samples into n*n coefficients, Hermitian symmetry exact.
  void forward(std::span<const double> samples, std::span<std::complex<double>> coeffs) const;
  /// Inverse transform; the input is read as a Hermitian array (entries with m2 < 0 are implied).
  void inverse(std::span<const std::complex<double>> coeffs, std::span<double> samples) const;

 private:
  explicit Grid(const GridSpec& spec);

  GridSpec spec_;
  double unit_;
  double k_max_;
  int mask_cutoff_;
  std::vector<double> k1_;
  std::vector<double> k2_;
  std::vector<double> kmag_;
  std::vector<std::uint8_t> mask_;
  std::vector<std::uint8_t> nyquist_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

}  // namespace gsqg
