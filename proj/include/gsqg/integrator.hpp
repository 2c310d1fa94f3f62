#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "gsqg/model.hpp"

namespace gsqg {

/// Step-size state. The next step uses dt = min(dt_max, cfl * h / max|u|, caller limit).
struct StepControl {
  /// Size of the last step taken (0 before the first step).
  double dt = 0.0;
  double cfl = 0.4;
  double dt_max = 1e-2;
  double t = 0.0;
  /// max|u| of the state the last step started from.
  double max_velocity = 0.0;
};

/// (e^z - 1) / z
double phi1(double z);
/// (e^z - 1 - z) / z^2
double phi2(double z);

struct StepResult {
  SpectralField theta;
  StepControl control;
};

/// One exponential (ETD) Runge-Kutta 2 step of d/dt theta = -Lambda^(2 alpha) theta + N(theta),
/// N = -u . grad theta. The linear part is integrated exactly, so the step is exact when N = 0.
/// Throws BlowUpError when max|u| or the new state is not finite.
StepResult step_etdrk2(const SpectralField& theta, const GsqgParams& p, const StepControl& sc,
                       double dt_limit = std::numeric_limits<double>::infinity());

/// Receives the state at its cadence (every <= 0 means after every step).
struct Observer {
  double every = 0.0;
  std::function<void(const SpectralField&, const StepControl&)> callback;
};

struct IntegrationResult {
  SpectralField theta;
  StepControl control;
  std::size_t steps = 0;
};

/// Called with the last finite state before a BlowUpError leaves integrate().
using BlowUpHandler = std::function<void(const SpectralField&, const StepControl&)>;

/// Advances theta0 from sc.t to t_end. Observers fire at sc.t, at sc.t + k * every (steps are
/// shortened to land on those times exactly) and at t_end.
IntegrationResult integrate(const SpectralField& theta0, const GsqgParams& p, StepControl sc, double t_end,
                            std::span<const Observer> observers = {}, const BlowUpHandler& on_blowup = {});

struct TrajectorySample {
  double t;
  SpectralField theta;
};

/// Relative L2 mismatch between the last sample and the mild-solution formula
/// e^(-t L) theta(t0) - int e^(-(t-s) L) (u . grad theta)(s) ds, the integral taken by the composite
/// trapezoid rule over the samples. Needs >= 3 samples; 0 when the samples span no time.
double duhamel_residual(std::span<const TrajectorySample> samples, const GsqgParams& p);

}  // namespace gsqg
