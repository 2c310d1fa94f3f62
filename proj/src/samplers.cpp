#include "gsqg/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "gsqg/fractional.hpp"
#include "gsqg/random_field.hpp"

namespace gsqg {

namespace {

// Pointwise product of two fields, dealiased and mean-free.
SpectralField product(const SpectralField& a, const SpectralField& b) {
  const PhysicalField pa = to_physical(a);
  const PhysicalField pb = to_physical(b);
  PhysicalField out{a.grid_ptr(), std::vector<double>(pa.samples.size())};
  for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] = pa.samples[i] * pb.samples[i];
  return dealias(to_spectral(out).field);
}

SpectralField partial(const SpectralField& f, int direction) {
  SpectralField out =
      apply_multiplier(f, [direction](const Wavevector& k) { return Complex(0.0, direction == 1 ? k.k1 : k.k2); });
  clear_nyquist(out.mutable_coefficients(), f.grid());
  return out;
}

RatioStats summarize(std::vector<double> ratios, std::uint64_t seed, int n) {
  RatioStats out;
  out.trials = ratios.size();
  out.seed = seed;
  out.n = n;
  if (ratios.empty()) return out;
  out.finite = std::all_of(ratios.begin(), ratios.end(), [](double r) { return std::isfinite(r); });
  double sum = 0.0;
  for (double r : ratios) sum += r;
  out.mean = sum / static_cast<double>(ratios.size());
  std::sort(ratios.begin(), ratios.end());
  out.min = ratios.front();
  out.max = ratios.back();
  const std::size_t mid = ratios.size() / 2;
  out.median = ratios.size() % 2 ? ratios[mid] : 0.5 * (ratios[mid - 1] + ratios[mid]);
  return out;
}

// Evaluates trial(t) for t in [0, trials) on up to `threads` workers; results by trial index.
template <typename Trial>
std::vector<double> run_trials(std::size_t trials, unsigned threads, Trial trial) {
  std::vector<double> out(trials);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t) out[t] = trial(t);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t = w; t < trials; t += workers) out[t] = trial(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Smooth random field confined to half the dealias cutoff so that products stay alias-free.
SpectralField trial_field(const GridPtr& grid, double slope, std::uint64_t seed) {
  RandomBand band;
  band.k_lo = grid->k_min();
  band.k_hi = grid->k_max();
  band.slope = slope;
  band.max_mode = grid->mask_cutoff() / 2;
  return random_band_field(grid, band, seed);
}

}  // namespace

std::string to_string(CommutatorLemma lemma) {
  return lemma == CommutatorLemma::fractional_derivative ? "fractional_derivative" : "dyadic_block";
}

bool refinement_stable(const RatioStats& coarse, const RatioStats& fine, double factor) {
  if (!coarse.finite || !fine.finite) return false;
  return fine.max <= factor * coarse.max && fine.median <= factor * coarse.median;
}

void validate_commutator_params(CommutatorLemma lemma, const CommutatorParams& q) {
  if (q.direction != 1 && q.direction != 2) throw DomainError("direction must be 1 or 2");
  if (lemma == CommutatorLemma::fractional_derivative) {
    if (!(q.s > 0.0 && q.s < 1.0)) throw DomainError("s must lie in (0, 1)");
    if (!(q.rho1 > 0.0 && q.rho1 < 2.0)) throw DomainError("rho1 must lie in (0, 2)");
    if (!(q.rho2 > -1.0 && q.rho2 < 1.0)) throw DomainError("rho2 must lie in (-1, 1)");
    if (!(q.rho2 > q.rho1 - 1.0)) throw DomainError("rho2 must exceed rho1 - 1");
    return;
  }
  if (!(q.s >= 0.0 && q.s < 1.0)) throw DomainError("s must lie in [0, 1)");
  if (!(q.nu > 0.0 && q.nu < 2.0)) throw DomainError("nu must lie in (0, 2)");
  if (!(q.s > q.nu - 1.0)) throw DomainError("s must exceed nu - 1");
  if (!std::isfinite(q.rho)) throw DomainError("rho must be finite");
}

EstimateSides commutator_sides(CommutatorLemma lemma, const CommutatorParams& q, const SpectralField& f,
                               const SpectralField& g, const SpectralField& h, const LPProjector& p) {
  validate_commutator_params(lemma, q);
  EstimateSides out;
  if (lemma == CommutatorLemma::fractional_derivative) {
    auto op = [&](const SpectralField& x) { return fractional_laplacian(partial(x, q.direction), -q.s); };
    const SpectralField comm = op(product(g, f)) - product(g, op(f));
    out.lhs = homogeneous_norm(comm, q.rho2 - q.rho1);
    out.rhs = homogeneous_norm(g, 2.0 - q.s - q.rho1) * homogeneous_norm(f, q.rho2);
    return out;
  }

  auto op = [&](const SpectralField& x) {
    const SpectralField localized = block(x, q.block_i, p);
    if (q.derivative_form) return fractional_laplacian(partial(localized, q.direction), q.s + q.rho);
    return fractional_laplacian(localized, q.s + q.rho + 1.0);
  };
  const SpectralField hj = block(h, q.block_j, p);
  const SpectralField comm = op(product(g, f)) - product(g, op(f));
  out.lhs = std::abs(inner_product(comm, hj));
  const double first = homogeneous_norm(f, 1.0 - q.nu) * homogeneous_norm(g, q.s + 1.0);
  const double second = homogeneous_norm(f, q.s) * homogeneous_norm(g, 2.0 - q.nu);
  out.rhs = std::min(first, second) * homogeneous_norm(hj, q.rho + q.nu);
  return out;
}

RatioStats sample_commutator_estimate(const GridPtr& grid, CommutatorLemma lemma, const CommutatorParams& params,
                                      std::size_t trials, const SamplerOptions& options) {
  validate_commutator_params(lemma, params);
  const LPProjector projector(grid);
  if (lemma == CommutatorLemma::dyadic_block) {
    if (!projector.in_range(params.block_i) || !projector.in_range(params.block_j)) {
      throw DomainError("dyadic block indices must lie in the grid's block range");
    }
  }
  auto ratios = run_trials(trials, options.threads, [&](std::size_t t) {
    const std::uint64_t base = derive_seed(options.seed, t);
    const SpectralField f = trial_field(grid, options.slope, derive_seed(base, 0));
    const SpectralField g = trial_field(grid, options.slope, derive_seed(base, 1));
    const SpectralField h = trial_field(grid, options.slope, derive_seed(base, 2));
    return commutator_sides(lemma, params, f, g, h, projector).ratio();
  });
  return summarize(std::move(ratios), options.seed, grid->n());
}

EstimateSides trilinear_sides(const SpectralField& theta, const GsqgParams& params, double sigma, const LPProjector& p) {
  const double alpha = params.alpha();
  const double beta = params.beta();
  if (!(sigma > 2.0 - alpha && sigma < 3.0 - alpha)) {
    throw DomainError("sigma must lie in (2 - alpha, 3 - alpha) = (" + std::to_string(2.0 - alpha) + ", " +
                      std::to_string(3.0 - alpha) + ")");
  }
  if (params.structure() != Structure::fully_nonlinear) throw DomainError("beta must lie in [2 alpha + 1, 2)");

  const SpectralField transport_term = nonlinear_term(theta, beta);
  const SpectralField lifted = fractional_laplacian(theta, 2.0 * sigma);
  EstimateSides out;
  for (int j = p.j_min(); j <= p.j_max(); ++j) {
    out.lhs += std::abs(inner_product(block(transport_term, j, p), block(lifted, j, p)));
  }
  out.rhs = homogeneous_norm(theta, params.critical_exponent()) * std::pow(homogeneous_norm(theta, sigma + alpha), 2);
  return out;
}

RatioStats sample_trilinear_bound(const GridPtr& grid, const GsqgParams& params, double sigma, std::size_t trials,
                                  const SamplerOptions& options) {
  const LPProjector projector(grid);
  // Validate the exponent range even when no trial runs.
  if (!(sigma > 2.0 - params.alpha() && sigma < 3.0 - params.alpha())) {
    throw DomainError("sigma must lie in (2 - alpha, 3 - alpha)");
  }
  if (params.structure() != Structure::fully_nonlinear) throw DomainError("beta must lie in [2 alpha + 1, 2)");
  auto ratios = run_trials(trials, options.threads, [&](std::size_t t) {
    const SpectralField theta = trial_field(grid, options.slope, derive_seed(options.seed, t));
    return trilinear_sides(theta, params, sigma, projector).ratio();
  });
  return summarize(std::move(ratios), options.seed, grid->n());
}

}  // namespace gsqg
