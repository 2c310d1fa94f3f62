#include "gsqg/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>

namespace gsqg {

namespace lp {

namespace {

double smooth_step_kernel(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// 0 at t <= 0, 1 at t >= 1.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = smooth_step_kernel(t);
  const double b = smooth_step_kernel(1.0 - t);
  return a / (a + b);
}

}  // namespace

double cutoff(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  return smooth_step(2.0 - r);
}

double annulus_bump(double r) { return cutoff(r) - cutoff(2.0 * r); }

double ball_bump(double r) { return cutoff(2.0 * r); }

}  // namespace lp

LPProjector::LPProjector(GridPtr grid) : grid_(std::move(grid)) {
  if (grid_->n() < 8) throw ConfigError("grid too small to host two dyadic shells (n < 8)");
  const double k_min = grid_->k_min();
  const double k_max = grid_->k_max();
  auto kmag = grid_->kmag();

  auto annulus_hits_lattice = [&](int j) {
    const double lo = std::ldexp(1.0, j - 1);
    const double hi = std::ldexp(1.0, j + 1);
    for (std::size_t i = 1; i < kmag.size(); ++i) {
      if (kmag[i] > lo && kmag[i] < hi) return true;
    }
    return false;
  };

  j_min_ = static_cast<int>(std::floor(std::log2(k_min))) - 2;
  while (!annulus_hits_lattice(j_min_)) ++j_min_;
  j_max_ = static_cast<int>(std::ceil(std::log2(k_max))) + 2;
  while (!annulus_hits_lattice(j_max_)) --j_max_;
  if (j_max_ - j_min_ < 1) throw ConfigError("grid too small to host two dyadic shells");

  phi_.assign(static_cast<std::size_t>(j_max_ - j_min_ + 1), std::vector<double>(kmag.size(), 0.0));
  for (int j = j_min_; j <= j_max_; ++j) {
    auto& table = phi_[static_cast<std::size_t>(j - j_min_)];
    for (std::size_t i = 1; i < kmag.size(); ++i) table[i] = lp::annulus_bump(std::ldexp(kmag[i], -j));
  }
  chi_.resize(kmag.size());
  for (std::size_t i = 0; i < kmag.size(); ++i) chi_[i] = lp::ball_bump(kmag[i]);
}

std::span<const double> LPProjector::phi_table(int j) const {
  if (!in_range(j)) {
    throw RangeError("dyadic block " + std::to_string(j) + " outside [" + std::to_string(j_min_) + ", " +
                     std::to_string(j_max_) + "]");
  }
  return phi_[static_cast<std::size_t>(j - j_min_)];
}

double LPProjector::partition_residual() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < grid_->size(); ++i) {
    double sum = 0.0;
    for (const auto& table : phi_) sum += table[i];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

LPProjector build_projector(const GridPtr& grid) { return LPProjector(grid); }

SpectralField block(const SpectralField& f, int j, const LPProjector& p) {
  auto table = p.phi_table(j);
  auto in = f.coefficients();
  std::vector<Complex> out(in.size(), Complex(0.0, 0.0));
  for (std::size_t i = 1; i < in.size(); ++i) {
    if (table[i] != 0.0) out[i] = table[i] * in[i];
  }
  return SpectralField::adopt(f.grid_ptr(), std::move(out));
}

SpectralField low_pass(const SpectralField& f, int j, const LPProjector& p) {
  auto kmag = p.grid().kmag();
  auto in = f.coefficients();
  std::vector<Complex> out(in.size(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double w = lp::ball_bump(std::ldexp(kmag[i], -j));
    if (w != 0.0) out[i] = w * in[i];
  }
  return SpectralField::adopt(f.grid_ptr(), std::move(out));
}

double check_norm_equivalence(const SpectralField& f, const LPProjector& p) {
  const double total = std::pow(l2_norm(f), 2);
  if (!(total > 0.0)) throw UndefinedError("norm-equivalence ratio is undefined for the zero field");
  double blocks = 0.0;
  for (int j = p.j_min(); j <= p.j_max(); ++j) blocks += std::pow(l2_norm(block(f, j, p)), 2);
  return blocks / total;
}

BernsteinCheck check_bernstein(const SpectralField& f, int j, double sigma, const LPProjector& p) {
  const SpectralField localized = block(f, j, p);
  const double base = l2_norm(localized);
  if (!(base > 0.0)) throw UndefinedError("field vanishes after Delta_" + std::to_string(j));

  const SpectralField lifted = apply_radial_multiplier(localized, [sigma](double k) { return std::pow(k, sigma); });
  BernsteinCheck out;
  out.operator_norm = l2_norm(lifted);
  out.reference_norm = std::pow(2.0, sigma * j) * base;
  out.constant = std::pow(2.0, std::abs(sigma));
  // Relative slack for round-off in the sigma = 0 equality case.
  constexpr double kSlack = 1e-14;
  out.lower_ok = out.reference_norm / out.constant <= out.operator_norm * (1.0 + kSlack);
  out.upper_ok = out.operator_norm <= out.constant * out.reference_norm * (1.0 + kSlack);
  return out;
}

}  // namespace gsqg
