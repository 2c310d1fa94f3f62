#pragma once

#include <cstdint>
#include <string>

#include "gsqg/littlewood_paley.hpp"
#include "gsqg/model.hpp"

namespace gsqg {

/// Summary of LHS/RHS ratios over random trials.
struct RatioStats {
  std::size_t trials = 0;
  double max = 0.0;
  double median = 0.0;
  double min = 0.0;
  double mean = 0.0;
  bool finite = true;
  std::uint64_t seed = 0;
  int n = 0;
};

/// Stable under refinement: the fine-grid max and median stay within `factor` of the coarse ones.
bool refinement_stable(const RatioStats& coarse, const RatioStats& fine, double factor = 2.0);

struct SamplerOptions {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  /// Spectral slope of the random trial fields.
  double slope = 5.0;
};

enum class CommutatorLemma {
  /// || [Lambda^(-s) d_l, g] f ||_{H-dot^(rho2-rho1)} <= C ||g||_{H-dot^(2-s-rho1)} ||f||_{H-dot^rho2}
  fractional_derivative,
  /// |< [Lambda^(s+rho) d_l Delta_i, g] f, h >| (form A) or |< [Lambda^(s+rho+1) Delta_i, g] f, h >| (form B)
  /// <= C min{||f||_{1-nu} ||g||_{s+1}, ||f||_s ||g||_{2-nu}} ||h||_{rho+nu}, supp h-hat in A_j
  dyadic_block,
};

struct CommutatorParams {
  double s = 0.5;
  int direction = 1;  // l in {1, 2}
  // fractional_derivative
  double rho1 = 0.8;
  double rho2 = 0.2;
  // dyadic_block
  double rho = 0.0;
  double nu = 0.5;
  int block_i = 2;
  int block_j = 2;
  bool derivative_form = true;
};

/// Throws DomainError naming the first violated constraint of the lemma's hypotheses.
void validate_commutator_params(CommutatorLemma lemma, const CommutatorParams& params);

struct EstimateSides {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio() const noexcept { return rhs > 0.0 ? lhs / rhs : 0.0; }
};

/// [A, g] f = A(g f) - g A(f), products pseudo-spectral and dealiased. For dyadic_block the pairing
/// field h is first localized with Delta_j.
EstimateSides commutator_sides(CommutatorLemma lemma, const CommutatorParams& params, const SpectralField& f,
                               const SpectralField& g, const SpectralField& h, const LPProjector& p);

/// Draws f, g (and h) per trial from seeds derived from options.seed.
RatioStats sample_commutator_estimate(const GridPtr& grid, CommutatorLemma lemma, const CommutatorParams& params,
                                      std::size_t trials, const SamplerOptions& options = {});

/// sum_j |<Delta_j (u . grad theta), Delta_j Lambda^(2 sigma) theta>| against
/// ||theta||_{H-dot^(1+beta-2 alpha)} ||theta||_{H-dot^(sigma+alpha)}^2.
/// Throws DomainError unless sigma in (2-alpha, 3-alpha) and beta in [2 alpha + 1, 2).
EstimateSides trilinear_sides(const SpectralField& theta, const GsqgParams& params, double sigma, const LPProjector& p);

RatioStats sample_trilinear_bound(const GridPtr& grid, const GsqgParams& params, double sigma, std::size_t trials,
                                  const SamplerOptions& options = {});

std::string to_string(CommutatorLemma lemma);

}  // namespace gsqg
