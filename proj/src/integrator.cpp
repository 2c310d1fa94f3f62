#include "gsqg/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "gsqg/fractional.hpp"

namespace gsqg {

namespace {

// -|k|^(2 alpha) and the ETD coefficients for one (grid, alpha, dt), cached per thread.
struct EtdCoefficients {
  GridSpec spec;
  double alpha = -1.0;
  double dt = -1.0;
  std::vector<double> decay;   // e^(c dt)
  std::vector<double> first;   // dt phi1(c dt)
  std::vector<double> second;  // dt phi2(c dt)
};

const EtdCoefficients& etd_coefficients(const Grid& grid, double alpha, double dt) {
  thread_local EtdCoefficients cache;
  if (cache.alpha == alpha && cache.dt == dt && cache.spec == grid.spec() && cache.decay.size() == grid.size()) {
    return cache;
  }
  thread_local struct {
    GridSpec spec;
    double alpha = -1.0;
    std::vector<double> values;
  } rates;
  const std::size_t size = grid.size();
  if (rates.alpha != alpha || rates.spec != grid.spec() || rates.values.size() != size) {
    auto kmag = grid.kmag();
    rates.values.assign(size, 0.0);
    for (std::size_t i = 1; i < size; ++i) rates.values[i] = std::pow(kmag[i], 2.0 * alpha);
    rates.spec = grid.spec();
    rates.alpha = alpha;
  }
  cache.decay.assign(size, 1.0);
  cache.first.assign(size, dt);
  cache.second.assign(size, 0.5 * dt);
  for (std::size_t i = 1; i < size; ++i) {
    const double z = -rates.values[i] * dt;
    cache.decay[i] = std::exp(z);
    cache.first[i] = dt * phi1(z);
    cache.second[i] = dt * phi2(z);
  }
  cache.spec = grid.spec();
  cache.alpha = alpha;
  cache.dt = dt;
  return cache;
}

bool all_finite(std::span<const Complex> c) {
  return std::all_of(c.begin(), c.end(), [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace

double phi1(double z) {
  if (std::abs(z) < 1e-4) {
    return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0 + z * z * z * z / 120.0 + z * z * z * z * z / 720.0;
  }
  return std::expm1(z) / z;
}

double phi2(double z) {
  // The closed form loses digits to cancellation well beyond |z| = 1e-4.
  if (std::abs(z) < 1e-1) {
    double term = 0.5;
    double sum = 0.5;
    for (int k = 3; k <= 12; ++k) {
      term *= z / k;
      sum += term;
    }
    return sum;
  }
  return (std::expm1(z) - z) / (z * z);
}

namespace {

// A non-finite product inside the transport term is a blow-up of the state, not a bad input.
TransportEvaluation transport_or_blowup(const SpectralField& theta, double beta, const StepControl& sc,
                                        const char* stage) {
  try {
    return transport(theta, beta);
  } catch (const InvalidFieldError& e) {
    throw BlowUpError(std::string(stage) + ": " + e.what(), sc.t, l2_norm(theta), sc.max_velocity);
  }
}

}  // namespace

StepResult step_etdrk2(const SpectralField& theta, const GsqgParams& p, const StepControl& sc, double dt_limit) {
  const Grid& grid = theta.grid();
  const TransportEvaluation n0 = transport_or_blowup(theta, p.beta(), sc, "nonlinear term");
  if (!std::isfinite(n0.max_speed)) {
    throw BlowUpError("max|u| is not finite", sc.t, l2_norm(theta), sc.max_velocity);
  }

  double dt = sc.dt_max;
  if (n0.max_speed > 0.0) dt = std::min(dt, sc.cfl * grid.spacing() / n0.max_speed);
  dt = std::min(dt, dt_limit);
  if (!(dt > 0.0)) throw DomainError("time step must be positive");

  const EtdCoefficients& etd = etd_coefficients(grid, p.alpha(), dt);
  auto th = theta.coefficients();
  auto nl0 = n0.term.coefficients();

  std::vector<Complex> stage(grid.size());
  for (std::size_t i = 0; i < stage.size(); ++i) stage[i] = etd.decay[i] * th[i] - etd.first[i] * nl0[i];
  stage[0] = Complex(0.0, 0.0);
  SpectralField predictor = SpectralField::adopt(theta.grid_ptr(), std::move(stage));
  if (!all_finite(predictor.coefficients())) {
    throw BlowUpError("predictor stage is not finite", sc.t, l2_norm(theta), n0.max_speed);
  }

  const TransportEvaluation n1 = transport_or_blowup(predictor, p.beta(), sc, "predictor nonlinear term");
  auto nl1 = n1.term.coefficients();
  std::vector<Complex> next(predictor.coefficients().begin(), predictor.coefficients().end());
  for (std::size_t i = 0; i < next.size(); ++i) next[i] -= etd.second[i] * (nl1[i] - nl0[i]);
  next[0] = Complex(0.0, 0.0);
  if (!all_finite(next)) throw BlowUpError("state is not finite", sc.t, l2_norm(theta), n0.max_speed);

  StepControl out = sc;
  out.dt = dt;
  out.t = sc.t + dt;
  out.max_velocity = n0.max_speed;
  return StepResult{SpectralField::adopt(theta.grid_ptr(), std::move(next)), out};
}

IntegrationResult integrate(const SpectralField& theta0, const GsqgParams& p, StepControl sc, double t_end,
                            std::span<const Observer> observers, const BlowUpHandler& on_blowup) {
  if (t_end < sc.t) throw DomainError("t_end must not precede the start time");
  const double t0 = sc.t;
  const double eps = 1e-12 * std::max(1.0, std::abs(t_end));

  // Next scheduled sample index per observer.
  std::vector<long long> next_index(observers.size(), 1);
  auto scheduled = [&](std::size_t o) { return t0 + static_cast<double>(next_index[o]) * observers[o].every; };

  SpectralField theta = theta0;
  if (sc.max_velocity == 0.0) {
    try {
      sc.max_velocity = transport_or_blowup(theta, p.beta(), sc, "initial nonlinear term").max_speed;
    } catch (const BlowUpError&) {
      if (on_blowup) on_blowup(theta, sc);
      throw;
    }
  }
  for (const Observer& o : observers) o.callback(theta, sc);

  std::size_t steps = 0;
  while (sc.t < t_end - eps) {
    double target = t_end;
    for (std::size_t o = 0; o < observers.size(); ++o) {
      if (observers[o].every > 0.0) target = std::min(target, scheduled(o));
    }
    StepResult r = [&] {
      try {
        return step_etdrk2(theta, p, sc, target - sc.t);
      } catch (const BlowUpError&) {
        if (on_blowup) on_blowup(theta, sc);
        throw;
      }
    }();
    if (std::abs(r.control.t - target) <= eps) r.control.t = target;
    theta = std::move(r.theta);
    sc = r.control;
    ++steps;

    const bool at_end = sc.t >= t_end - eps;
    if (at_end) sc.t = t_end;
    for (std::size_t o = 0; o < observers.size(); ++o) {
      const Observer& obs = observers[o];
      bool fire = obs.every <= 0.0 || at_end;
      if (obs.every > 0.0) {
        while (scheduled(o) <= sc.t + eps) {
          fire = true;
          ++next_index[o];
        }
      }
      if (fire) obs.callback(theta, sc);
    }
  }
  return IntegrationResult{std::move(theta), sc, steps};
}

double duhamel_residual(std::span<const TrajectorySample> samples, const GsqgParams& p) {
  if (samples.size() < 3) throw InsufficientDataError("Duhamel residual needs at least 3 snapshots");
  const double t0 = samples.front().t;
  const double t = samples.back().t;
  if (t == t0) return 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].t > samples[i - 1].t)) throw OrderingError("snapshot times must be strictly increasing");
  }

  const double alpha = p.alpha();
  SpectralField mild = heat_semigroup(samples.front().theta, t - t0, alpha);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double weight = 0.0;
    if (i > 0) weight += 0.5 * (samples[i].t - samples[i - 1].t);
    if (i + 1 < samples.size()) weight += 0.5 * (samples[i + 1].t - samples[i].t);
    SpectralField integrand = heat_semigroup(nonlinear_term(samples[i].theta, p.beta()), t - samples[i].t, alpha);
    mild -= weight * integrand;
  }
  const double norm = l2_norm(samples.back().theta);
  if (!(norm > 0.0)) return l2_norm(mild);
  return l2_norm(samples.back().theta - mild) / norm;
}

}  // namespace gsqg
