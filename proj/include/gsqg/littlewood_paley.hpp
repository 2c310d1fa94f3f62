#pragma once

#include <span>
#include <vector>

#include "gsqg/spectral_field.hpp"

namespace gsqg {

namespace lp {

/// Smooth cutoff: 1 on [0, 1], 0 on [2, inf), a C-infinity monotone transition in between.
double cutoff(double r);
/// phi(r) = cutoff(r) - cutoff(2r); supported in the open annulus (1/2, 2).
double annulus_bump(double r);
/// chi(r) = cutoff(2r); supported in the open ball of radius 1.
double ball_bump(double r);

}  // namespace lp

/// Dyadic partition of unity realised as multiplier tables on one grid.
///
/// The block range [j_min, j_max] is the set of j whose annulus (2^(j-1), 2^(j+1)) meets the
/// nonzero lattice; blocks outside it vanish identically on the grid.
class LPProjector {
 public:
  explicit LPProjector(GridPtr grid);

  const Grid& grid() const noexcept { return *grid_; }
  int j_min() const noexcept { return j_min_; }
  int j_max() const noexcept { return j_max_; }
  bool in_range(int j) const noexcept { return j >= j_min_ && j <= j_max_; }

  /// phi_j(k) over the lattice; throws RangeError outside [j_min, j_max].
  std::span<const double> phi_table(int j) const;
  /// chi(k) over the lattice (unscaled).
  std::span<const double> chi_table() const noexcept { return chi_; }

  /// max over nonzero lattice points of |sum_j phi_j(k) - 1|.
  double partition_residual() const;

 private:
  GridPtr grid_;
  int j_min_;
  int j_max_;
  std::vector<std::vector<double>> phi_;
  std::vector<double> chi_;
};

LPProjector build_projector(const GridPtr& grid);

/// Delta_j f.
SpectralField block(const SpectralField& f, int j, const LPProjector& p);
/// S_j f: multiplier chi(2^(-j) |k|). Any integer j is allowed.
SpectralField low_pass(const SpectralField& f, int j, const LPProjector& p);

/// (sum_j ||Delta_j f||^2) / ||f||^2, which lies in [1/2, 1] for this partition.
double check_norm_equivalence(const SpectralField& f, const LPProjector& p);

struct BernsteinCheck {
  bool lower_ok = false;
  bool upper_ok = false;
  /// ||Lambda^sigma Delta_j f||_{L2}
  double operator_norm = 0.0;
  /// 2^(sigma j) ||Delta_j f||_{L2}
  double reference_norm = 0.0;
  /// 2^|sigma|
  double constant = 1.0;
};

/// L2 Bernstein bounds for Delta_j f with the constant 2^|sigma| forced by the annulus radii.
BernsteinCheck check_bernstein(const SpectralField& f, int j, double sigma, const LPProjector& p);

}  // namespace gsqg
