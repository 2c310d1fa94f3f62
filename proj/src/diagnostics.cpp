#include "gsqg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gsqg/fractional.hpp"

namespace gsqg {

void observe(const SpectralField& theta, double t, RunRecord& record, const StepInfo& info) {
  if (!record.empty() && !(t > record.times.back())) {
    throw OrderingError("observation time " + std::to_string(t) + " does not exceed the last recorded time " +
                        std::to_string(record.times.back()));
  }
  const double s = record.params.critical_exponent();
  const double alpha = record.params.alpha();

  const double l2 = homogeneous_norm(theta, 0.0);
  const double hom = homogeneous_norm(theta, s);
  const double inhom = std::sqrt(l2 * l2 + hom * hom);
  const double rate = std::pow(homogeneous_norm(theta, alpha), 2) + std::pow(homogeneous_norm(theta, alpha + s), 2);

  double integral = 0.0;
  if (!record.empty()) {
    integral = record.diss_integral.back() + 0.5 * (t - record.times.back()) * (rate + record.diss_rate.back());
  }

  record.times.push_back(t);
  record.l2_norm.push_back(l2);
  record.crit_hom_norm.push_back(hom);
  record.crit_inhom_norm.push_back(inhom);
  record.diss_rate.push_back(rate);
  record.diss_integral.push_back(integral);
  record.energy_budget.push_back(inhom * inhom + integral);
  record.dt.push_back(info.dt);
  record.max_velocity.push_back(info.max_velocity);
}

EnergyCheck check_energy_inequality(const RunRecord& record, double tol) {
  EnergyCheck out;
  if (record.empty()) throw InsufficientDataError("energy check needs a nonempty record");
  const double initial = record.energy_budget.front();
  if (!(initial > 0.0)) return out;
  for (std::size_t i = 1; i < record.size(); ++i) {
    out.max_violation = std::max(out.max_violation, (record.energy_budget[i] - initial) / initial);
    out.max_step_increase =
        std::max(out.max_step_increase, (record.energy_budget[i] - record.energy_budget[i - 1]) / initial);
  }
  out.holds = out.max_violation <= tol;
  return out;
}

double critical_norm_ratio(const RunRecord& record) {
  if (record.empty()) throw InsufficientDataError("empty record");
  const double initial = record.crit_inhom_norm.front();
  return initial > 0.0 ? record.crit_inhom_norm.back() / initial : 0.0;
}

DecayReport check_decay(const RunRecord& record) {
  if (record.empty()) throw InsufficientDataError("decay check needs a nonempty record");
  const double k_min = 2.0 * std::numbers::pi / record.grid.period;
  DecayReport out;
  out.reference_rate = std::pow(k_min, 2.0 * record.params.alpha());

  const double t0 = record.times.front();
  const double t1 = record.times.back();
  if (record.crit_inhom_norm.front() == 0.0) {
    out.ratio = 0.0;
    out.rate = out.reference_rate;
    out.fit_start = t0;
    out.fit_end = t1;
    return out;
  }
  if (t1 - t0 < 20.0 / out.reference_rate) {
    throw InsufficientDataError("decay check needs t_end - t0 >= " + std::to_string(20.0 / out.reference_rate) +
                                ", record covers " + std::to_string(t1 - t0));
  }
  out.ratio = critical_norm_ratio(record);

  const double mid = 0.5 * (t0 + t1);
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < record.size(); ++i) {
    if (record.times[i] < mid || !(record.crit_inhom_norm[i] > 0.0)) continue;
    xs.push_back(record.times[i]);
    ys.push_back(std::log(record.crit_inhom_norm[i]));
  }
  if (xs.size() < 2) throw InsufficientDataError("fewer than two samples in the second half of the run");
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= static_cast<double>(xs.size());
  mean_y /= static_cast<double>(xs.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  out.rate = -sxy / sxx;
  out.rate_relative_error = std::abs(out.rate - out.reference_rate) / out.reference_rate;
  out.fit_start = mid;
  out.fit_end = t1;
  return out;
}

double regularity_criterion_integral(const RunRecord& record) {
  if (record.empty()) throw InsufficientDataError("empty record");
  return record.diss_integral.back();
}

}  // namespace gsqg
