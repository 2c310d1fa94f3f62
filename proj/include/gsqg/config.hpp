#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "gsqg/grid.hpp"
#include "gsqg/model.hpp"
#include "gsqg/spectral_field.hpp"

namespace gsqg {

struct InitialCondition {
  enum class Kind { single_mode, two_mode, random_band, snapshot };
  Kind kind = Kind::two_mode;
  /// single_mode: lattice mode of amplitude * cos(k . x)
  int m1 = 1;
  int m2 = 0;
  /// single_mode / two_mode: coefficient amplitude; random_band: target ||theta0||_{H^s}
  double amplitude = 1.0;
  /// random_band
  std::uint64_t seed = 0;
  double k_lo = 1.0;
  double k_hi = 4.0;
  /// snapshot
  std::string path;
};

/// Everything a run needs. JSON keys are the field names.
struct RunConfig {
  double alpha = 0.25;
  double beta = 1.6;
  int n = 64;
  double period = 2.0 * std::numbers::pi;
  double t_end = 1.0;
  double dt_max = 1e-2;
  double cfl = 0.4;
  InitialCondition initial_condition;
  double observe_every = 0.1;
  std::optional<double> snapshot_every;
  std::string output_dir = "gsqg_output";
  std::uint64_t seed = 1;

  /// Throws ConfigError naming the violated field.
  void validate() const;
  GsqgParams params() const { return GsqgParams::make(alpha, beta); }
  GridSpec grid_spec() const { return GridSpec{n, period, 2.0 / 3.0}; }
};

void to_json(nlohmann::json& j, const InitialCondition& ic);
void from_json(const nlohmann::json& j, InitialCondition& ic);
void to_json(nlohmann::json& j, const RunConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, RunConfig& c);

RunConfig load_config(const std::filesystem::path& path);
/// Canonical form: sorted keys, two-space indentation, trailing newline.
std::string dump_config(const RunConfig& c);

/// The initial field described by the config. Random-band data is scaled to the requested
/// critical inhomogeneous norm and dealiased.
SpectralField make_initial_field(const RunConfig& c, const GridPtr& grid);

std::string to_string(InitialCondition::Kind kind);

/// printf("%.17g"): round-trip exact.
std::string format_real(double v);

}  // namespace gsqg
