#pragma once

#include "gsqg/spectral_field.hpp"

namespace gsqg {

/// Order and flavour of an L2-based Sobolev norm.
struct SobolevIndex {
  double sigma = 0.0;
  /// Homogeneous: ||Lambda^sigma f||. Inhomogeneous (split form): (||f||^2 + ||Lambda^sigma f||^2)^(1/2),
  /// which requires sigma >= 0.
  bool homogeneous = true;
};

/// Lambda^sigma f, i.e. multiplier |k|^sigma. Throws SingularModeError if sigma < 0 and f has a mean.
SpectralField fractional_laplacian(const SpectralField& f, double sigma);

double sobolev_norm(const SpectralField& f, SobolevIndex idx);
inline double homogeneous_norm(const SpectralField& f, double sigma) { return sobolev_norm(f, {sigma, true}); }
inline double inhomogeneous_norm(const SpectralField& f, double sigma) { return sobolev_norm(f, {sigma, false}); }

/// exp(-t Lambda^(2 alpha)) f. Throws DomainError for t < 0.
SpectralField heat_semigroup(const SpectralField& f, double t, double alpha);

struct FrequencySplit {
  /// Modes with |k| <= delta.
  SpectralField low;
  /// The rest.
  SpectralField high;
};

/// Sharp split at radius delta > 0; low + high reproduces f coefficient-wise.
FrequencySplit split_frequencies(const SpectralField& f, double delta);

/// ||f||^zeta ||f||_{H^(1+beta-alpha)}^(1-zeta) - ||f||_{H^(1+beta-2 alpha)} with zeta = alpha/(1+beta-alpha).
/// Non-negative by Hölder on the Fourier side; zero on single-shell fields.
double check_interpolation(const SpectralField& f, double alpha, double beta);

}  // namespace gsqg
