#pragma once

#include <string>

#include "gsqg/spectral_field.hpp"

namespace gsqg {

enum class Regime { subcritical, critical, supercritical };
enum class Structure { quasilinear, fully_nonlinear };

std::string to_string(Regime r);
std::string to_string(Structure s);

/// Dissipation order alpha in (0, 1) and constitutive exponent beta in (0, 2).
class GsqgParams {
 public:
  /// Throws ConfigError naming the offending parameter.
  static GsqgParams make(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  /// 1 + beta - 2 alpha: the scaling-critical Sobolev order.
  double critical_exponent() const noexcept { return 1.0 + beta_ - 2.0 * alpha_; }
  Regime regime() const noexcept;
  Structure structure() const noexcept;
  /// alpha in (0, 1/2) and beta in [2 alpha + 1, 2).
  bool in_theorem_scope() const noexcept;

 private:
  GsqgParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {}
  double alpha_;
  double beta_;
};

struct Velocity {
  SpectralField u1;
  SpectralField u2;
};

/// u = (d2 Lambda^(beta-2) theta, -d1 Lambda^(beta-2) theta). Nyquist modes are dropped.
Velocity velocity(const SpectralField& theta, double beta);

struct TransportEvaluation {
  /// Dealiased u . grad theta, mean-zero.
  SpectralField term;
  /// max over grid nodes of |u|.
  double max_speed = 0.0;
};

/// Pseudo-spectral u_theta . grad theta with the 2/3 rule applied to the inputs and the product.
TransportEvaluation transport(const SpectralField& theta, double beta);
inline SpectralField nonlinear_term(const SpectralField& theta, double beta) { return transport(theta, beta).term; }

/// -Lambda^(2 alpha) theta - u_theta . grad theta.
SpectralField rhs(const SpectralField& theta, const GsqgParams& p);

/// grad^perp Lambda^(beta-2) theta . grad theta + Lambda^(beta-2) div(theta grad^perp theta),
/// the commutator splitting of the transport term; the second piece vanishes identically in the
/// continuum and is evaluated pseudo-spectrally here.
SpectralField commutator_form(const SpectralField& theta, double beta);

struct ScalingCheck {
  /// max |u_{theta_l}(x) - l^(2 alpha - 1) u_theta(l x)| / max(1, max |u_theta|)
  double velocity_error = 0.0;
  /// max |rhs(theta_l)(x) - l^(4 alpha - beta) rhs(theta)(l x)| / max(1, max |rhs(theta)|)
  double rhs_error = 0.0;
  double max_error() const noexcept { return velocity_error > rhs_error ? velocity_error : rhs_error; }
};

/// Static check of the scaling symmetry theta_l(x) = l^(2 alpha - beta) theta(l x) on the grid.
/// The rescaled field and its quadratic products must stay inside the dealias mask; otherwise
/// ResolutionError.
ScalingCheck check_scaling_covariance(const SpectralField& theta, const GsqgParams& p, int lambda = 2);

/// theta(l x) for integer l, as a spectral field (mode m moves to l m). ResolutionError if a
/// moved mode leaves the lattice.
SpectralField dilate(const SpectralField& theta, int lambda);

}  // namespace gsqg
