#include "gsqg/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include "gsqg/fractional.hpp"
#include "gsqg/integrator.hpp"
#include "gsqg/littlewood_paley.hpp"
#include "gsqg/random_field.hpp"
#include "gsqg/samplers.hpp"
#include "gsqg/snapshot.hpp"

namespace gsqg {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe, std::ios::trunc);
    if (!out) throw IoError("output directory is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

std::string series_row(const RunRecord& r, std::size_t i) {
  std::string row;
  for (double v : {r.times[i], r.l2_norm[i], r.crit_hom_norm[i], r.crit_inhom_norm[i], r.diss_integral[i],
                   r.energy_budget[i], r.dt[i], r.max_velocity[i]}) {
    if (!row.empty()) row += ',';
    row += format_real(v);
  }
  return row + '\n';
}

json params_json(const GsqgParams& p) {
  return json{{"alpha", p.alpha()},
              {"beta", p.beta()},
              {"critical_exponent", p.critical_exponent()},
              {"regime", to_string(p.regime())},
              {"structure", to_string(p.structure())},
              {"in_theorem_scope", p.in_theorem_scope()}};
}

json report_json(const RunOutcome& outcome, const RunConfig& config) {
  const RunRecord& record = outcome.record;
  json report;
  report["status"] = outcome.status;
  report["steps"] = outcome.steps;
  report["seed"] = config.seed;
  report["params"] = params_json(record.params);
  report["integrator"] = json{{"scheme", record.integrator.scheme},
                              {"quadrature", record.integrator.quadrature},
                              {"cfl", record.integrator.cfl},
                              {"dt_max", record.integrator.dt_max}};
  if (record.empty()) return report;

  const EnergyCheck energy = check_energy_inequality(record);
  report["energy_inequality"] = json{{"holds", energy.holds},
                                     {"max_violation", energy.max_violation},
                                     {"max_step_increase", energy.max_step_increase},
                                     {"tolerance", 1e-5}};
  json decay{{"ratio", critical_norm_ratio(record)}};
  try {
    const DecayReport d = check_decay(record);
    decay["rate"] = d.rate;
    decay["reference_rate"] = d.reference_rate;
    decay["rate_relative_error"] = d.rate_relative_error;
    decay["fit_start"] = d.fit_start;
    decay["fit_end"] = d.fit_end;
  } catch (const InsufficientDataError& e) {
    decay["error"] = e.what();
  }
  report["decay"] = decay;
  const double initial = record.crit_inhom_norm.front();
  report["regularity_integral"] = json{{"value", regularity_criterion_integral(record)},
                                       {"initial_crit_inhom_norm_squared", initial * initial},
                                       {"bounded", regularity_criterion_integral(record) <= initial * initial}};
  return report;
}

}  // namespace

RunOutcome run_simulation(const RunConfig& config) {
  config.validate();
  const fs::path dir(config.output_dir);
  prepare_output_dir(dir);
  write_text(dir / "config.json", dump_config(config));

  const GridPtr grid = Grid::create(config.grid_spec());
  const GsqgParams params = config.params();
  const SpectralField theta0 = make_initial_field(config, grid);

  RunOutcome outcome{kExitOk, "completed",
                     RunRecord(params, config.grid_spec(), IntegratorInfo{"etdrk2", "trapezoid", config.cfl, config.dt_max}),
                     0};

  std::ofstream series(dir / "series.csv", std::ios::trunc);
  if (!series) throw IoError("cannot write series.csv");
  series << kSeriesHeader << '\n' << std::flush;

  std::vector<Observer> observers;
  observers.push_back(Observer{config.observe_every, [&](const SpectralField& theta, const StepControl& sc) {
                                 observe(theta, sc.t, outcome.record, StepInfo{sc.dt, sc.max_velocity});
                                 series << series_row(outcome.record, outcome.record.size() - 1) << std::flush;
                               }});
  int snapshot_index = 0;
  if (config.snapshot_every) {
    observers.push_back(Observer{*config.snapshot_every, [&](const SpectralField& theta, const StepControl&) {
                                   char name[32];
                                   std::snprintf(name, sizeof name, "snapshot_%06d.gsqg", snapshot_index++);
                                   write_snapshot(dir / name, to_physical(theta));
                                 }});
  }

  StepControl sc;
  sc.cfl = config.cfl;
  sc.dt_max = config.dt_max;
  try {
    const IntegrationResult result =
        integrate(theta0, params, sc, config.t_end, observers, [&](const SpectralField& last, const StepControl&) {
          write_snapshot(dir / "blowup_last_valid.gsqg", to_physical(last));
        });
    outcome.steps = result.steps;
  } catch (const BlowUpError& e) {
    outcome.exit_code = kExitBlowUp;
    outcome.status = "blowup";
    json report = report_json(outcome, config);
    report["blowup"] = json{{"message", e.what()}, {"time", e.time()}, {"last_l2_norm", e.last_l2_norm()}};
    write_text(dir / "report.json", report.dump(2) + "\n");
    return outcome;
  }
  write_text(dir / "report.json", report_json(outcome, config).dump(2) + "\n");
  return outcome;
}

namespace {

PropertyResult property(std::string name, bool passed, json measured) {
  return PropertyResult{std::move(name), passed, std::move(measured)};
}

json stats_json(const RatioStats& s) {
  return json{{"trials", s.trials}, {"max", s.max},   {"median", s.median}, {"min", s.min},
              {"mean", s.mean},     {"finite", s.finite}, {"seed", s.seed}, {"n", s.n}};
}

}  // namespace

VerificationOutcome verify(const RunConfig& config, unsigned threads) {
  config.validate();
  const fs::path dir(config.output_dir);
  prepare_output_dir(dir);

  const GsqgParams params = config.params();
  const GridPtr grid = Grid::create(config.grid_spec());
  const GridPtr fine = Grid::create(GridSpec{2 * config.n, config.period, 2.0 / 3.0});
  const LPProjector projector(grid);
  const std::uint64_t seed = config.seed;
  const double alpha = params.alpha();
  const double beta = params.beta();

  auto random_field = [&](std::uint64_t stream, double k_hi, int max_mode = -1) {
    return random_band_field(grid, RandomBand{grid->k_min(), k_hi, 0.0, max_mode}, derive_seed(seed, stream));
  };

  VerificationOutcome out;

  out.properties.push_back(property("partition_of_unity", projector.partition_residual() <= 1e-12,
                                    json{{"residual", projector.partition_residual()}, {"threshold", 1e-12}}));

  {
    double lo = 1.0, hi = 0.0;
    for (std::uint64_t t = 0; t < 200; ++t) {
      const double r = check_norm_equivalence(random_field(1000 + t, grid->k_max()), projector);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    out.properties.push_back(property("norm_equivalence", lo >= 0.5 - 1e-12 && hi <= 1.0 + 1e-12,
                                      json{{"min_ratio", lo}, {"max_ratio", hi}, {"fields", 200}}));
  }

  {
    std::size_t checks = 0, failures = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      const SpectralField f = random_field(2000 + t, grid->k_max());
      for (int j = projector.j_min(); j <= projector.j_max(); ++j) {
        for (double sigma : {-1.0, -0.5, 0.0, 0.5, 1.0, 1.6}) {
          const BernsteinCheck b = check_bernstein(f, j, sigma, projector);
          ++checks;
          if (!b.lower_ok || !b.upper_ok) ++failures;
        }
      }
    }
    out.properties.push_back(property("bernstein", failures == 0, json{{"checks", checks}, {"failures", failures}}));
  }

  {
    double worst = std::numeric_limits<double>::infinity();
    for (std::uint64_t t = 0; t < 200; ++t) {
      worst = std::min(worst, check_interpolation(random_field(3000 + t, grid->k_max()), alpha, beta));
    }
    double single = 0.0;
    for (int m = 1; m < 4; ++m) {
      SpectralField f = single_mode_field(grid, m, 0);
      f *= 1.0 / homogeneous_norm(f, params.critical_exponent());
      single = std::max(single, std::abs(check_interpolation(f, alpha, beta)));
    }
    out.properties.push_back(property("interpolation", worst >= -1e-10 && single <= 1e-12,
                                      json{{"min_margin", worst}, {"max_single_mode_margin", single}}));
  }

  {
    const int extent = grid->mask_cutoff() / 4;
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 5; ++t) {
      worst = std::max(worst, check_scaling_covariance(random_field(4000 + t, grid->k_max(), extent), params, 2).max_error());
    }
    out.properties.push_back(property("scaling_covariance", worst <= 1e-11, json{{"max_error", worst}, {"threshold", 1e-11}}));
  }

  {
    double orth = 0.0, agreement = 0.0;
    for (std::uint64_t t = 0; t < 5; ++t) {
      const SpectralField theta = random_field(5000 + t, grid->k_max(), grid->mask_cutoff() / 2);
      const SpectralField nl = nonlinear_term(theta, beta);
      const double scale = l2_norm(nl) * l2_norm(theta);
      orth = std::max(orth, std::abs(inner_product(nl, theta)) / scale);
      agreement = std::max(agreement, l2_norm(commutator_form(theta, beta) - nl) / l2_norm(nl));
    }
    out.properties.push_back(property("transport_orthogonality", orth <= 1e-11, json{{"max_relative_pairing", orth}}));
    out.properties.push_back(property("commutator_form_agreement", agreement <= 1e-10, json{{"max_relative_difference", agreement}}));
  }

  const SamplerOptions options{seed, threads, 5.0};
  {
    const CommutatorParams q;
    const RatioStats a = sample_commutator_estimate(grid, CommutatorLemma::fractional_derivative, q, 20, options);
    const RatioStats b = sample_commutator_estimate(fine, CommutatorLemma::fractional_derivative, q, 20, options);
    out.properties.push_back(property("commutator_fractional_derivative", a.finite && refinement_stable(a, b),
                                      json{{"coarse", stats_json(a)}, {"fine", stats_json(b)}}));
  }
  {
    const CommutatorParams q;
    const RatioStats a = sample_commutator_estimate(grid, CommutatorLemma::dyadic_block, q, 20, options);
    const RatioStats b = sample_commutator_estimate(fine, CommutatorLemma::dyadic_block, q, 20, options);
    out.properties.push_back(property("commutator_dyadic_block", a.finite && refinement_stable(a, b),
                                      json{{"coarse", stats_json(a)}, {"fine", stats_json(b)}}));
  }
  if (params.structure() == Structure::fully_nonlinear) {
    double sigma = params.critical_exponent();
    if (!(sigma > 2.0 - alpha && sigma < 3.0 - alpha)) sigma = 2.5 - alpha;
    const RatioStats a = sample_trilinear_bound(grid, params, sigma, 20, options);
    const RatioStats b = sample_trilinear_bound(fine, params, sigma, 20, options);
    RandomBand band{grid->k_min(), grid->k_max(), 5.0, grid->mask_cutoff() / 2};
    const SpectralField theta = random_band_field(grid, band, derive_seed(seed, 6000));
    const double r1 = trilinear_sides(theta, params, sigma, projector).ratio();
    const double r2 = trilinear_sides(2.0 * theta, params, sigma, projector).ratio();
    const double homogeneity = std::abs(r2 - r1) / r1;
    out.properties.push_back(property("trilinear_bound", a.finite && refinement_stable(a, b) && homogeneity <= 1e-12,
                                      json{{"sigma", sigma},
                                           {"coarse", stats_json(a)},
                                           {"fine", stats_json(b)},
                                           {"rescaling_error", homogeneity}}));
  } else {
    out.properties.push_back(property("trilinear_bound", true, json{{"skipped", "beta outside [2 alpha + 1, 2)"}}));
  }

  json doc;
  doc["seed"] = seed;
  doc["n"] = config.n;
  doc["params"] = params_json(params);
  json list = json::array();
  bool all = true;
  for (const PropertyResult& p : out.properties) {
    list.push_back(json{{"name", p.name}, {"passed", p.passed}, {"measured", p.measured}});
    if (!p.passed) {
      all = false;
      out.failed.push_back(p.name);
    }
  }
  doc["properties"] = list;
  doc["all_passed"] = all;
  write_text(dir / "verification.json", doc.dump(2) + "\n");
  out.exit_code = all ? kExitOk : kExitFailure;
  return out;
}

std::string sweep_point_name(double alpha, double beta) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "alpha_%.6g_beta_%.6g", alpha, beta);
  return buf;
}

std::vector<SweepRow> sweep(const RunConfig& tmpl, std::span<const std::pair<double, double>> points,
                            const fs::path& output_root, unsigned threads) {
  prepare_output_dir(output_root);
  std::vector<SweepRow> rows(points.size());

  auto run_point = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.alpha = points[i].first;
    row.beta = points[i].second;
    try {
      const GsqgParams p = GsqgParams::make(row.alpha, row.beta);
      row.regime = to_string(p.regime());
      row.structure = to_string(p.structure());
      RunConfig c = tmpl;
      c.alpha = row.alpha;
      c.beta = row.beta;
      c.output_dir = (output_root / sweep_point_name(row.alpha, row.beta)).string();
      const RunOutcome o = run_simulation(c);
      row.status = o.status;
      if (!o.record.empty()) {
        row.decay_ratio = critical_norm_ratio(o.record);
        row.energy_inequality = check_energy_inequality(o.record).holds;
        row.regularity_integral = regularity_criterion_integral(o.record);
      }
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(points.size(), 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < points.size(); ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < points.size(); i = next++) run_point(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::string csv = std::string(kSummaryHeader) + "\n";
  auto csv_field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + "\"";
  };
  for (const SweepRow& r : rows) {
    csv += format_real(r.alpha) + "," + format_real(r.beta) + "," + r.regime + "," + r.structure + ",";
    csv += (r.decay_ratio ? format_real(*r.decay_ratio) : "") + ",";
    csv += (r.energy_inequality ? (*r.energy_inequality ? "true" : "false") : "") + std::string(",");
    csv += (r.regularity_integral ? format_real(*r.regularity_integral) : "") + ",";
    csv += csv_field(r.status) + "\n";
  }
  write_text(output_root / "summary.csv", csv);
  return rows;
}

}  // namespace gsqg
