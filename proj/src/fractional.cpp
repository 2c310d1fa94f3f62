#include "gsqg/fractional.hpp"

#include <cmath>

namespace gsqg {

namespace {

void require_mean_zero(const SpectralField& f, double sigma) {
  if (sigma < 0.0 && !f.has_zero_mean()) {
    throw SingularModeError("Lambda^" + std::to_string(sigma) + " is singular at k = 0 and the field has a nonzero mean");
  }
}

// period^2 sum_k |k|^(2 sigma) |c(k)|^2 over nonzero modes, plus the mean when sigma == 0.
double weighted_energy(const SpectralField& f, double sigma) {
  auto c = f.coefficients();
  auto kmag = f.grid().kmag();
  double sum = sigma == 0.0 ? std::norm(c[0]) : 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double a = std::norm(c[i]);
    if (a != 0.0) sum += std::pow(kmag[i], 2.0 * sigma) * a;
  }
  const double p = f.grid().period();
  return p * p * sum;
}

}  // namespace

SpectralField fractional_laplacian(const SpectralField& f, double sigma) {
  require_mean_zero(f, sigma);
  return apply_radial_multiplier(f, [sigma](double k) { return std::pow(k, sigma); });
}

double sobolev_norm(const SpectralField& f, SobolevIndex idx) {
  require_mean_zero(f, idx.sigma);
  if (idx.homogeneous) return std::sqrt(weighted_energy(f, idx.sigma));
  if (idx.sigma < 0.0) throw DomainError("inhomogeneous split-form Sobolev norm requires sigma >= 0");
  return std::sqrt(weighted_energy(f, 0.0) + weighted_energy(f, idx.sigma));
}

SpectralField heat_semigroup(const SpectralField& f, double t, double alpha) {
  if (!(t >= 0.0)) throw DomainError("heat semigroup time must be >= 0");
  if (t == 0.0) return f;
  return apply_radial_multiplier(f, [t, alpha](double k) { return std::exp(-t * std::pow(k, 2.0 * alpha)); });
}

FrequencySplit split_frequencies(const SpectralField& f, double delta) {
  if (!(delta > 0.0)) throw DomainError("frequency split radius must be > 0");
  auto c = f.coefficients();
  auto kmag = f.grid().kmag();
  std::vector<Complex> low(c.size(), Complex(0.0, 0.0));
  std::vector<Complex> high(c.size(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    (kmag[i] <= delta ? low : high)[i] = c[i];
  }
  return FrequencySplit{SpectralField::adopt(f.grid_ptr(), std::move(low)),
                        SpectralField::adopt(f.grid_ptr(), std::move(high))};
}

double check_interpolation(const SpectralField& f, double alpha, double beta) {
  const double l2 = homogeneous_norm(f, 0.0);
  if (!(l2 > 0.0)) throw UndefinedError("interpolation margin is undefined for the zero field");
  const double upper = 1.0 + beta - alpha;
  const double zeta = alpha / upper;
  const double top = homogeneous_norm(f, upper);
  const double critical = homogeneous_norm(f, 1.0 + beta - 2.0 * alpha);
  return std::pow(l2, zeta) * std::pow(top, 1.0 - zeta) - critical;
}

}  // namespace gsqg
