#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsqg/config.hpp"
#include "gsqg/diagnostics.hpp"

namespace gsqg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBlowUp = 2;

struct RunOutcome {
  int exit_code = kExitOk;
  /// "completed" or "blowup"
  std::string status;
  RunRecord record;
  std::size_t steps = 0;
};

/// Simulates the config into config.output_dir: config.json, series.csv (one row per observation,
/// flushed as written), report.json and optional snapshot_NNNNNN.gsqg files. Blow-up returns
/// kExitBlowUp with the partial artifacts and blowup_last_valid.gsqg. Throws IoError before any
/// compute if the directory is not writable, ConfigError for an invalid config.
RunOutcome run_simulation(const RunConfig& config);

/// series.csv header, fixed column order.
inline constexpr const char* kSeriesHeader = "t,l2_norm,crit_hom_norm,crit_inhom_norm,diss_integral,energy_budget,dt,max_velocity";

struct PropertyResult {
  std::string name;
  bool passed = false;
  nlohmann::json measured;
};

struct VerificationOutcome {
  int exit_code = kExitOk;
  std::vector<PropertyResult> properties;
  std::vector<std::string> failed;
};

/// Runs the harmonic-analysis and model property suites at the config's grid and (alpha, beta)
/// and writes verification.json to config.output_dir. Deterministic for a fixed config.seed.
VerificationOutcome verify(const RunConfig& config, unsigned threads = 1);

struct SweepRow {
  double alpha = 0.0;
  double beta = 0.0;
  std::string regime;
  std::string structure;
  std::string status;
  std::optional<double> decay_ratio;
  std::optional<bool> energy_inequality;
  std::optional<double> regularity_integral;
};

/// One run per (alpha, beta) under output_root/alpha_<a>_beta_<b>; output_root/summary.csv gets one
/// row per point in input order. Failed points are recorded and the sweep continues.
std::vector<SweepRow> sweep(const RunConfig& tmpl, std::span<const std::pair<double, double>> points,
                            const std::filesystem::path& output_root, unsigned threads = 1);

inline constexpr const char* kSummaryHeader =
    "alpha,beta,regime,structure,decay_ratio,energy_inequality,regularity_integral,status";

/// "alpha_0.25_beta_1.6"
std::string sweep_point_name(double alpha, double beta);

}  // namespace gsqg
