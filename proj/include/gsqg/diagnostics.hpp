#pragma once

#include <string>
#include <vector>

#include "gsqg/grid.hpp"
#include "gsqg/model.hpp"

namespace gsqg {

struct IntegratorInfo {
  std::string scheme = "etdrk2";
  std::string quadrature = "trapezoid";
  double cfl = 0.4;
  double dt_max = 1e-2;
};

/// Time series of the monitored norms for one run. s below is the critical order 1 + beta - 2 alpha.
struct RunRecord {
  GsqgParams params;
  GridSpec grid;
  IntegratorInfo integrator;

  std::vector<double> times;
  std::vector<double> l2_norm;          // ||theta||_{L2}
  std::vector<double> crit_hom_norm;    // ||theta||_{H-dot^s}
  std::vector<double> crit_inhom_norm;  // ||theta||_{H^s}
  std::vector<double> diss_rate;        // ||Lambda^alpha theta||_{H^s}^2
  std::vector<double> diss_integral;    // running trapezoid integral of diss_rate
  std::vector<double> energy_budget;    // crit_inhom_norm^2 + diss_integral
  std::vector<double> dt;
  std::vector<double> max_velocity;

  explicit RunRecord(GsqgParams p, GridSpec g = {}, IntegratorInfo info = {})
      : params(p), grid(g), integrator(std::move(info)) {}

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
};

struct StepInfo {
  double dt = 0.0;
  double max_velocity = 0.0;
};

/// Appends one sample. Throws OrderingError unless t exceeds the last recorded time.
void observe(const SpectralField& theta, double t, RunRecord& record, const StepInfo& info = {});

struct EnergyCheck {
  bool holds = true;
  /// max_t (budget(t) - budget(0)) / budget(0), 0 for a zero budget.
  double max_violation = 0.0;
  /// Largest increase between consecutive samples, relative to budget(0).
  double max_step_increase = 0.0;
};

/// Energy inequality: budget(t) <= budget(0) (1 + tol) for every recorded t.
EnergyCheck check_energy_inequality(const RunRecord& record, double tol = 1e-5);

struct DecayReport {
  /// crit_inhom_norm(t_end) / crit_inhom_norm(0); 0 for zero initial data.
  double ratio = 0.0;
  /// Least-squares exponential rate of crit_inhom_norm over the second half of the run.
  double rate = 0.0;
  /// |k_min|^(2 alpha): decay rate of the lowest lattice mode.
  double reference_rate = 1.0;
  double rate_relative_error = 0.0;
  double fit_start = 0.0;
  double fit_end = 0.0;
};

/// Needs t_end - t_0 >= 20 / reference_rate, otherwise InsufficientDataError.
DecayReport check_decay(const RunRecord& record);

/// crit_inhom_norm(t_end) / crit_inhom_norm(0) without any horizon requirement.
double critical_norm_ratio(const RunRecord& record);

/// Final value of the running dissipation integral.
double regularity_criterion_integral(const RunRecord& record);

}  // namespace gsqg
