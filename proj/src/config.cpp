#include "gsqg/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "gsqg/fractional.hpp"
#include "gsqg/random_field.hpp"
#include "gsqg/snapshot.hpp"

namespace gsqg {

using nlohmann::json;

namespace {

InitialCondition::Kind kind_from_string(const std::string& s) {
  if (s == "single_mode") return InitialCondition::Kind::single_mode;
  if (s == "two_mode") return InitialCondition::Kind::two_mode;
  if (s == "random_band") return InitialCondition::Kind::random_band;
  if (s == "snapshot") return InitialCondition::Kind::snapshot;
  throw ConfigError("initial_condition.type: unknown kind '" + s + "'");
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + key + ": wrong type");
  }
}

}  // namespace

std::string to_string(InitialCondition::Kind kind) {
  switch (kind) {
    case InitialCondition::Kind::single_mode: return "single_mode";
    case InitialCondition::Kind::two_mode: return "two_mode";
    case InitialCondition::Kind::random_band: return "random_band";
    case InitialCondition::Kind::snapshot: return "snapshot";
  }
  return "unknown";
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void to_json(json& j, const InitialCondition& ic) {
  j = json{{"type", to_string(ic.kind)}};
  switch (ic.kind) {
    case InitialCondition::Kind::single_mode:
      j["k"] = {ic.m1, ic.m2};
      j["amplitude"] = ic.amplitude;
      break;
    case InitialCondition::Kind::two_mode:
      j["amplitude"] = ic.amplitude;
      break;
    case InitialCondition::Kind::random_band:
      j["seed"] = ic.seed;
      j["k_lo"] = ic.k_lo;
      j["k_hi"] = ic.k_hi;
      j["amplitude"] = ic.amplitude;
      break;
    case InitialCondition::Kind::snapshot:
      j["path"] = ic.path;
      break;
  }
}

void from_json(const json& j, InitialCondition& ic) {
  const std::string where = "initial_condition.";
  if (!j.is_object()) throw ConfigError("initial_condition must be an object");
  std::string type = to_string(ic.kind);
  read(j, "type", type, where);
  ic.kind = kind_from_string(type);
  reject_unknown(j, {"type", "k", "amplitude", "seed", "k_lo", "k_hi", "path"}, "initial_condition");
  if (j.contains("k")) {
    const json& k = j.at("k");
    if (!k.is_array() || k.size() != 2 || !k[0].is_number_integer() || !k[1].is_number_integer()) {
      throw ConfigError("initial_condition.k must be a pair of integers");
    }
    ic.m1 = k[0].get<int>();
    ic.m2 = k[1].get<int>();
  }
  read(j, "amplitude", ic.amplitude, where);
  read(j, "seed", ic.seed, where);
  read(j, "k_lo", ic.k_lo, where);
  read(j, "k_hi", ic.k_hi, where);
  read(j, "path", ic.path, where);
}

void to_json(json& j, const RunConfig& c) {
  j = json{{"alpha", c.alpha},
           {"beta", c.beta},
           {"n", c.n},
           {"period", c.period},
           {"t_end", c.t_end},
           {"dt_max", c.dt_max},
           {"cfl", c.cfl},
           {"initial_condition", c.initial_condition},
           {"observe_every", c.observe_every},
           {"snapshot_every", c.snapshot_every ? json(*c.snapshot_every) : json(nullptr)},
           {"output_dir", c.output_dir},
           {"seed", c.seed}};
}

void from_json(const json& j, RunConfig& c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"alpha", "beta", "n", "period", "t_end", "dt_max", "cfl", "initial_condition", "observe_every",
                  "snapshot_every", "output_dir", "seed"},
                 "config");
  read(j, "alpha", c.alpha, "");
  read(j, "beta", c.beta, "");
  read(j, "n", c.n, "");
  read(j, "period", c.period, "");
  read(j, "t_end", c.t_end, "");
  read(j, "dt_max", c.dt_max, "");
  read(j, "cfl", c.cfl, "");
  if (j.contains("initial_condition")) c.initial_condition = j.at("initial_condition").get<InitialCondition>();
  read(j, "observe_every", c.observe_every, "");
  if (j.contains("snapshot_every")) {
    const json& s = j.at("snapshot_every");
    if (s.is_null()) {
      c.snapshot_every.reset();
    } else if (s.is_number()) {
      c.snapshot_every = s.get<double>();
    } else {
      throw ConfigError("snapshot_every: must be a number or null");
    }
  }
  read(j, "output_dir", c.output_dir, "");
  read(j, "seed", c.seed, "");
}

void RunConfig::validate() const {
  (void)params();
  grid_spec().validate();
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be a finite number >= 0");
  if (!(dt_max > 0.0)) throw ConfigError("dt_max must be > 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (!(observe_every > 0.0)) throw ConfigError("observe_every must be > 0");
  if (snapshot_every && !(*snapshot_every > 0.0)) throw ConfigError("snapshot_every must be > 0 or null");
  const InitialCondition& ic = initial_condition;
  switch (ic.kind) {
    case InitialCondition::Kind::single_mode:
      if ((ic.m1 == 0 && ic.m2 == 0) || std::abs(ic.m1) >= n / 2 || std::abs(ic.m2) >= n / 2) {
        throw ConfigError("initial_condition.k must be a nonzero mode representable on the grid");
      }
      break;
    case InitialCondition::Kind::two_mode:
      break;
    case InitialCondition::Kind::random_band:
      if (!(ic.k_lo > 0.0 && ic.k_hi >= ic.k_lo)) throw ConfigError("initial_condition: need 0 < k_lo <= k_hi");
      if (!(ic.amplitude >= 0.0)) throw ConfigError("initial_condition.amplitude must be >= 0");
      break;
    case InitialCondition::Kind::snapshot:
      if (ic.path.empty()) throw ConfigError("initial_condition.path must name a GSQG1 snapshot");
      break;
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return j.get<RunConfig>();
}

std::string dump_config(const RunConfig& c) { return json(c).dump(2) + "\n"; }

SpectralField make_initial_field(const RunConfig& c, const GridPtr& grid) {
  const InitialCondition& ic = c.initial_condition;
  switch (ic.kind) {
    case InitialCondition::Kind::single_mode:
      return single_mode_field(grid, ic.m1, ic.m2, ic.amplitude);
    case InitialCondition::Kind::two_mode:
      return two_mode_field(grid, ic.amplitude);
    case InitialCondition::Kind::random_band: {
      RandomBand band{ic.k_lo, ic.k_hi, 0.0, grid->mask_cutoff()};
      SpectralField f = random_band_field(grid, band, ic.seed);
      const double norm = inhomogeneous_norm(f, c.params().critical_exponent());
      if (norm > 0.0) f *= ic.amplitude / norm;
      return f;
    }
    case InitialCondition::Kind::snapshot: {
      const PhysicalField samples = read_snapshot(ic.path);
      if (samples.grid->n() != grid->n() || samples.grid->period() != grid->period()) {
        throw ConfigError("initial_condition.path: snapshot grid does not match n/period");
      }
      return dealias(to_spectral(PhysicalField{grid, samples.samples}).field);
    }
  }
  throw ConfigError("unknown initial condition");
}

}  // namespace gsqg
