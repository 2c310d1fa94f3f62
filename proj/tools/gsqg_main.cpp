#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "gsqg/runner.hpp"

namespace {

using namespace gsqg;

bool config_names_output_dir(const std::string& path) {
  std::ifstream in(path);
  if (!in) return false;
  const nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  return j.is_object() && j.contains("output_dir");
}

// --output-dir, then the config's own output_dir, then $GSQG_OUTPUT_ROOT, then the built-in default.
RunConfig resolve(const std::string& path, const std::optional<std::string>& output_dir,
                  const std::optional<std::uint64_t>& seed) {
  RunConfig config = load_config(path);
  if (output_dir) {
    config.output_dir = *output_dir;
  } else if (!config_names_output_dir(path)) {
    if (const char* root = std::getenv("GSQG_OUTPUT_ROOT"); root && *root) config.output_dir = root;
  }
  if (seed) {
    config.seed = *seed;
    if (config.initial_condition.kind == InitialCondition::Kind::random_band) config.initial_condition.seed = *seed;
  }
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral solver and property harness for the dissipative gSQG equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::vector<double> alphas, betas, beta_offsets;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "config JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("--output-dir", output_dir, "output directory (overrides the config)");
    cmd->add_option("--seed", seed, "master seed (overrides the config)");
    cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  };
  CLI::App* run = app.add_subcommand("run", "simulate one configuration");
  common(run);
  CLI::App* ver = app.add_subcommand("verify", "run the property suites");
  common(ver);
  CLI::App* swp = app.add_subcommand("sweep", "run a grid of (alpha, beta) values");
  common(swp);
  swp->add_option("--alphas", alphas, "alpha values")->required()->delimiter(',');
  auto* b = swp->add_option("--betas", betas, "beta values")->delimiter(',');
  auto* o = swp->add_option("--beta-offsets", beta_offsets, "beta = 2 alpha + 1 + offset")->delimiter(',');
  b->excludes(o);
  o->excludes(b);

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig config = resolve(config_path, output_dir, seed);
    if (*run) {
      const RunOutcome outcome = run_simulation(config);
      std::cout << outcome.status << ": " << outcome.steps << " steps, output in " << config.output_dir << '\n';
      return outcome.exit_code;
    }
    if (*ver) {
      const VerificationOutcome outcome = verify(config, threads);
      for (const PropertyResult& p : outcome.properties) {
        std::cout << (p.passed ? "pass " : "FAIL ") << p.name << '\n';
      }
      if (!outcome.failed.empty()) {
        std::cerr << "failed properties:";
        for (const std::string& name : outcome.failed) std::cerr << ' ' << name;
        std::cerr << '\n';
      }
      return outcome.exit_code;
    }
    std::vector<std::pair<double, double>> points;
    for (double a : alphas) {
      if (!beta_offsets.empty()) {
        for (double off : beta_offsets) points.emplace_back(a, 2.0 * a + 1.0 + off);
      } else {
        for (double beta : betas) points.emplace_back(a, beta);
      }
    }
    for (const auto& [a, beta] : points) GsqgParams::make(a, beta);
    const std::vector<SweepRow> rows = sweep(config, points, config.output_dir, threads);
    int failures = 0;
    for (const SweepRow& r : rows) {
      if (r.status != "completed") ++failures;
    }
    std::cout << rows.size() << " runs, " << failures << " not completed, summary in " << config.output_dir
              << "/summary.csv\n";
    return kExitOk;
  } catch (const gsqg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
