#include "gsqg/model.hpp"

#include <algorithm>
#include <cmath>

#include "gsqg/fractional.hpp"

namespace gsqg {

namespace {

constexpr double kRegimeTolerance = 1e-12;

enum class Op { d1, d2, u1, u2 };

// |k|^(beta-2) on the lattice, cached per thread for the last (grid, beta) pair.
std::span<const double> velocity_weights(const Grid& grid, double beta) {
  struct Cache {
    GridSpec spec;
    double beta = -1.0;
    std::vector<double> table;
  };
  thread_local Cache cache;
  if (cache.beta != beta || cache.spec != grid.spec() || cache.table.size() != grid.size()) {
    auto kmag = grid.kmag();
    cache.table.assign(grid.size(), 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i) cache.table[i] = std::pow(kmag[i], beta - 2.0);
    cache.spec = grid.spec();
    cache.beta = beta;
  }
  return cache.table;
}

// Multiplies theta by one of the first-order symbols, writing into out (Nyquist cleared).
void apply_symbol(std::span<const Complex> in, std::span<Complex> out, const Grid& grid, Op op, double beta) {
  auto k1 = grid.k1();
  auto k2 = grid.k2();
  auto ny = grid.nyquist();
  const std::span<const double> weight =
      (op == Op::u1 || op == Op::u2) ? velocity_weights(grid, beta) : std::span<const double>{};
  const Complex I(0.0, 1.0);
  out[0] = Complex(0.0, 0.0);
  for (std::size_t i = 1; i < in.size(); ++i) {
    if (ny[i] || in[i] == Complex(0.0, 0.0)) {
      out[i] = Complex(0.0, 0.0);
      continue;
    }
    switch (op) {
      case Op::d1: out[i] = I * k1[i] * in[i]; break;
      case Op::d2: out[i] = I * k2[i] * in[i]; break;
      case Op::u1: out[i] = I * (k2[i] * weight[i]) * in[i]; break;
      case Op::u2: out[i] = -I * (k1[i] * weight[i]) * in[i]; break;
    }
  }
}

std::vector<double> physical(const Grid& grid, std::span<const Complex> coeffs) {
  std::vector<double> out(grid.size());
  grid.inverse(coeffs, out);
  return out;
}

std::vector<Complex> masked_copy(const SpectralField& f) {
  std::vector<Complex> c(f.coefficients().begin(), f.coefficients().end());
  auto mask = f.grid().dealias_mask();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!mask[i]) c[i] = Complex(0.0, 0.0);
  }
  c[0] = Complex(0.0, 0.0);
  return c;
}

// Forward transform of a physical product, dealiased, mean removed.
std::vector<Complex> spectral_product(const Grid& grid, std::span<const double> samples) {
  std::vector<Complex> c(grid.size());
  grid.forward(samples, c);
  auto mask = grid.dealias_mask();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!mask[i]) c[i] = Complex(0.0, 0.0);
  }
  c[0] = Complex(0.0, 0.0);
  return c;
}

void require_mean_zero(const SpectralField& theta, const char* what) {
  if (!theta.has_zero_mean()) {
    throw SingularModeError(std::string(what) + ": Lambda^(beta-2) is singular at k = 0 and theta has a nonzero mean");
  }
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::subcritical: return "subcritical";
    case Regime::critical: return "critical";
    case Regime::supercritical: return "supercritical";
  }
  return "unknown";
}

std::string to_string(Structure s) {
  return s == Structure::fully_nonlinear ? "fully_nonlinear" : "quasilinear";
}

GsqgParams GsqgParams::make(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  if (!(beta > 0.0 && beta < 2.0)) throw ConfigError("beta must lie in (0, 2), got " + std::to_string(beta));
  return GsqgParams(alpha, beta);
}

Regime GsqgParams::regime() const noexcept {
  const double gap = beta_ - 2.0 * alpha_;
  if (gap > kRegimeTolerance) return Regime::supercritical;
  if (gap < -kRegimeTolerance) return Regime::subcritical;
  return Regime::critical;
}

Structure GsqgParams::structure() const noexcept {
  return beta_ >= 2.0 * alpha_ + 1.0 - kRegimeTolerance ? Structure::fully_nonlinear : Structure::quasilinear;
}

bool GsqgParams::in_theorem_scope() const noexcept {
  return alpha_ > 0.0 && alpha_ < 0.5 && structure() == Structure::fully_nonlinear && beta_ < 2.0;
}

Velocity velocity(const SpectralField& theta, double beta) {
  require_mean_zero(theta, "velocity");
  const Grid& grid = theta.grid();
  std::vector<Complex> u1(grid.size());
  std::vector<Complex> u2(grid.size());
  apply_symbol(theta.coefficients(), u1, grid, Op::u1, beta);
  apply_symbol(theta.coefficients(), u2, grid, Op::u2, beta);
  return Velocity{SpectralField::adopt(theta.grid_ptr(), std::move(u1)),
                  SpectralField::adopt(theta.grid_ptr(), std::move(u2))};
}

TransportEvaluation transport(const SpectralField& theta, double beta) {
  require_mean_zero(theta, "nonlinear term");
  if (!theta.is_finite()) throw InvalidFieldError("nonlinear term: theta has non-finite coefficients");
  const Grid& grid = theta.grid();
  const std::vector<Complex> base = masked_copy(theta);

  std::vector<Complex> scratch(grid.size());
  apply_symbol(base, scratch, grid, Op::u1, beta);
  const std::vector<double> u1 = physical(grid, scratch);
  apply_symbol(base, scratch, grid, Op::u2, beta);
  const std::vector<double> u2 = physical(grid, scratch);
  apply_symbol(base, scratch, grid, Op::d1, beta);
  const std::vector<double> d1 = physical(grid, scratch);
  apply_symbol(base, scratch, grid, Op::d2, beta);
  const std::vector<double> d2 = physical(grid, scratch);

  std::vector<double> product(grid.size());
  double speed2 = 0.0;
  for (std::size_t i = 0; i < product.size(); ++i) {
    product[i] = u1[i] * d1[i] + u2[i] * d2[i];
    speed2 = std::max(speed2, u1[i] * u1[i] + u2[i] * u2[i]);
  }
  for (double v : product) {
    if (!std::isfinite(v)) throw InvalidFieldError("nonlinear term produced non-finite values");
  }
  return TransportEvaluation{SpectralField::adopt(theta.grid_ptr(), spectral_product(grid, product)),
                             std::sqrt(speed2)};
}

SpectralField rhs(const SpectralField& theta, const GsqgParams& p) {
  SpectralField out = fractional_laplacian(theta, 2.0 * p.alpha());
  out *= -1.0;
  out -= nonlinear_term(theta, p.beta());
  return out;
}

SpectralField commutator_form(const SpectralField& theta, double beta) {
  require_mean_zero(theta, "commutator form");
  const Grid& grid = theta.grid();
  const std::vector<Complex> base = masked_copy(theta);
  const std::vector<double> th = physical(grid, base);

  std::vector<Complex> scratch(grid.size());
  apply_symbol(base, scratch, grid, Op::d1, beta);
  const std::vector<double> d1 = physical(grid, scratch);
  apply_symbol(base, scratch, grid, Op::d2, beta);
  const std::vector<double> d2 = physical(grid, scratch);

  // grad^perp Lambda^(beta-2) theta . grad theta
  SpectralField first = nonlinear_term(theta, beta);

  // div(theta grad^perp theta) with grad^perp theta = (d2 theta, -d1 theta)
  std::vector<double> flux1(grid.size());
  std::vector<double> flux2(grid.size());
  for (std::size_t i = 0; i < th.size(); ++i) {
    flux1[i] = th[i] * d2[i];
    flux2[i] = -th[i] * d1[i];
  }
  const std::vector<Complex> f1 = spectral_product(grid, flux1);
  const std::vector<Complex> f2 = spectral_product(grid, flux2);
  auto k1 = grid.k1();
  auto k2 = grid.k2();
  auto kmag = grid.kmag();
  auto ny = grid.nyquist();
  const Complex I(0.0, 1.0);
  std::vector<Complex> second(grid.size(), Complex(0.0, 0.0));
  for (std::size_t i = 1; i < second.size(); ++i) {
    if (ny[i]) continue;
    second[i] = std::pow(kmag[i], beta - 2.0) * I * (k1[i] * f1[i] + k2[i] * f2[i]);
  }
  first += SpectralField::adopt(theta.grid_ptr(), std::move(second));
  return first;
}

SpectralField dilate(const SpectralField& theta, int lambda) {
  if (lambda < 1) throw DomainError("dilation factor must be a positive integer");
  const Grid& grid = theta.grid();
  const int half = grid.n() / 2;
  auto in = theta.coefficients();
  std::vector<Complex> out(grid.size(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == Complex(0.0, 0.0)) continue;
    const Wavevector k = grid.wavevector(i);
    const int m1 = lambda * k.m1;
    const int m2 = lambda * k.m2;
    if (std::abs(m1) >= half || std::abs(m2) >= half) {
      throw ResolutionError("dilated mode (" + std::to_string(m1) + ", " + std::to_string(m2) + ") exceeds the lattice");
    }
    out[grid.flat_of_modes(m1, m2)] = in[i];
  }
  return SpectralField::adopt(theta.grid_ptr(), std::move(out));
}

ScalingCheck check_scaling_covariance(const SpectralField& theta, const GsqgParams& p, int lambda) {
  if (lambda < 1) throw DomainError("scaling factor must be a positive integer");
  const Grid& grid = theta.grid();
  int extent = 0;
  auto c = theta.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == Complex(0.0, 0.0)) continue;
    const Wavevector k = grid.wavevector(i);
    extent = std::max({extent, std::abs(k.m1), std::abs(k.m2)});
  }
  if (2 * lambda * extent > grid.mask_cutoff()) {
    throw ResolutionError("rescaled field needs modes up to " + std::to_string(2 * lambda * extent) +
                          " for alias-free products, mask keeps " + std::to_string(grid.mask_cutoff()));
  }

  const double alpha = p.alpha();
  const double beta = p.beta();
  SpectralField scaled = dilate(theta, lambda);
  scaled *= std::pow(lambda, 2.0 * alpha - beta);

  // theta(l x) at node i is theta at node (l i) mod n.
  const int n = grid.n();
  auto compare = [&](const PhysicalField& lhs, const PhysicalField& base, double factor) {
    double worst = 0.0;
    double scale = 1.0;
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        const double reference = factor * base.at((lambda * i1) % n, (lambda * i2) % n);
        worst = std::max(worst, std::abs(lhs.at(i1, i2) - reference));
        scale = std::max(scale, std::abs(reference));
      }
    }
    return worst / scale;
  };

  ScalingCheck out;
  const Velocity u = velocity(theta, beta);
  const Velocity u_scaled = velocity(scaled, beta);
  const double vfactor = std::pow(lambda, 2.0 * alpha - 1.0);
  out.velocity_error = std::max(compare(to_physical(u_scaled.u1), to_physical(u.u1), vfactor),
                                compare(to_physical(u_scaled.u2), to_physical(u.u2), vfactor));
  const double rfactor = std::pow(lambda, 4.0 * alpha - beta);
  out.rhs_error = compare(to_physical(rhs(scaled, p)), to_physical(rhs(theta, p)), rfactor);
  return out;
}

}  // namespace gsqg
