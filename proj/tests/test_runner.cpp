#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gsqg/config.hpp"
#include "gsqg/error.hpp"
#include "gsqg/fractional.hpp"
#include "gsqg/runner.hpp"
#include "gsqg/snapshot.hpp"

using namespace gsqg;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("gsqg_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> read_series(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  CHECK(line == kSeriesHeader);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    CHECK(row.size() == 8);
    rows.push_back(row);
  }
  return rows;
}

RunConfig quick_config(const fs::path& out) {
  RunConfig c;
  c.n = 32;
  c.t_end = 0.5;
  c.observe_every = 0.1;
  c.initial_condition.kind = InitialCondition::Kind::two_mode;
  c.initial_condition.amplitude = 0.01;
  c.output_dir = out.string();
  return c;
}

int run_cli(const std::string& args) {
  const char* cli = std::getenv("GSQG_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "GSQG_CLI must point at the command-line binary");
  const int status = std::system((std::string(cli) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config JSON round trip") {
  RunConfig c;
  c.alpha = 0.3;
  c.beta = 1.7;
  c.snapshot_every = 0.25;
  c.initial_condition.kind = InitialCondition::Kind::single_mode;
  c.initial_condition.m1 = 2;
  c.initial_condition.m2 = -1;
  c.initial_condition.amplitude = 0.1 + 0.2;  // not exactly representable in short decimal form
  const std::string text = dump_config(c);
  const RunConfig back = json::parse(text).get<RunConfig>();
  CHECK(dump_config(back) == text);
  CHECK(back.initial_condition.amplitude == c.initial_condition.amplitude);
  CHECK(back.snapshot_every == c.snapshot_every);

  const json j = json::parse(text);
  for (const char* key : {"alpha", "beta", "n", "period", "t_end", "dt_max", "cfl", "initial_condition",
                          "observe_every", "snapshot_every", "output_dir", "seed"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["initial_condition"]["type"] == "single_mode");
  CHECK(j["initial_condition"]["k"] == json::array({2, -1}));
  c.snapshot_every.reset();
  CHECK(json::parse(dump_config(c))["snapshot_every"].is_null());
}

TEST_CASE("config parsing errors name the field") {
  auto parse = [](const std::string& text) { return json::parse(text).get<RunConfig>(); };
  CHECK_THROWS_WITH_AS(parse(R"({"alpah": 0.2})"), doctest::Contains("alpah"), ConfigError);
  CHECK_THROWS_WITH_AS(parse(R"({"beta": "x"})"), doctest::Contains("beta"), ConfigError);
  CHECK_THROWS_WITH_AS(parse(R"({"initial_condition": {"type": "vortex"}})"), doctest::Contains("vortex"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"initial_condition": {"type": "single_mode", "k": [1]}})"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"snapshot_every": "often"})"), ConfigError);
  CHECK_THROWS_AS(parse("[1, 2]"), ConfigError);

  RunConfig c;
  c.beta = 2.5;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("beta"), ConfigError);
  c = {};
  c.n = 31;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("grid.n"), ConfigError);
  c = {};
  c.cfl = 0.0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("cfl"), ConfigError);
  c = {};
  c.t_end = -1.0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("t_end"), ConfigError);
  c = {};
  c.initial_condition.kind = InitialCondition::Kind::single_mode;
  c.initial_condition.m1 = 0;
  c.initial_condition.m2 = 0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("initial_condition.k"), ConfigError);

  TempDir dir("config_files");
  CHECK_THROWS_AS(load_config(dir.path / "missing.json"), IoError);
  std::ofstream(dir.path / "bad.json") << "{ not json";
  CHECK_THROWS_AS(load_config(dir.path / "bad.json"), ConfigError);
  std::ofstream(dir.path / "good.json") << R"({"alpha": 0.2, "beta": 1.5})";
  CHECK(load_config(dir.path / "good.json").alpha == 0.2);
  CHECK(format_real(0.1) == "0.10000000000000001");
}

TEST_CASE("initial conditions") {
  RunConfig c;
  c.n = 64;
  const GridPtr g = Grid::create(c.grid_spec());
  c.initial_condition.kind = InitialCondition::Kind::random_band;
  c.initial_condition.amplitude = 0.01;
  c.initial_condition.seed = 3;
  const SpectralField f = make_initial_field(c, g);
  CHECK(inhomogeneous_norm(f, c.params().critical_exponent()) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(l2_norm(dealias(f) - f) == 0.0);
  c.initial_condition.seed = 4;
  CHECK(l2_norm(make_initial_field(c, g) - f) > 0.0);

  TempDir dir("initial_snapshot");
  write_snapshot(dir.path / "s.gsqg", to_physical(f));
  c.initial_condition.kind = InitialCondition::Kind::snapshot;
  c.initial_condition.path = (dir.path / "s.gsqg").string();
  CHECK(l2_norm(make_initial_field(c, g) - f) <= 1e-15);
  c.n = 32;
  CHECK_THROWS_AS(make_initial_field(c, Grid::create(c.grid_spec())), ConfigError);
}

TEST_CASE("run: single-mode linear decay") {
  TempDir dir("run_linear");
  RunConfig c;
  c.n = 64;
  c.t_end = 1.0;
  c.initial_condition.kind = InitialCondition::Kind::single_mode;
  c.output_dir = dir.path.string();
  const RunOutcome o = run_simulation(c);
  CHECK(o.exit_code == kExitOk);
  CHECK(o.status == "completed");
  const auto rows = read_series(dir.path / "series.csv");
  REQUIRE(rows.size() == 11);
  CHECK(rows.back()[0] == 1.0);
  CHECK(rows.back()[1] == doctest::Approx(std::exp(-1.0) * rows.front()[1]).epsilon(1e-8));
  const json report = json::parse(slurp(dir.path / "report.json"));
  CHECK(report["status"] == "completed");
  CHECK(report["energy_inequality"]["holds"] == true);
  CHECK(report["decay"].contains("error"));
  CHECK(report["params"]["regime"] == "supercritical");
  CHECK(json::parse(slurp(dir.path / "config.json")).get<RunConfig>().t_end == 1.0);
}

TEST_CASE("run: t_end = 0 and snapshots") {
  TempDir dir("run_zero");
  RunConfig c = quick_config(dir.path);
  c.t_end = 0.0;
  CHECK(run_simulation(c).exit_code == kExitOk);
  CHECK(read_series(dir.path / "series.csv").size() == 1);
  CHECK(json::parse(slurp(dir.path / "report.json"))["energy_inequality"]["holds"] == true);

  c.t_end = 0.5;
  c.snapshot_every = 0.25;
  CHECK(run_simulation(c).exit_code == kExitOk);
  for (const char* name : {"snapshot_000000.gsqg", "snapshot_000001.gsqg", "snapshot_000002.gsqg"}) {
    CHECK(fs::exists(dir.path / name));
  }
  CHECK_FALSE(fs::exists(dir.path / "snapshot_000003.gsqg"));
  CHECK(read_snapshot(dir.path / "snapshot_000000.gsqg").grid->n() == 32);
}

TEST_CASE("run: small-data two-mode run satisfies the energy inequality") {
  TempDir dir("run_two_mode");
  RunConfig c = quick_config(dir.path);
  c.n = 64;
  c.t_end = 2.0;
  CHECK(run_simulation(c).exit_code == kExitOk);
  const json report = json::parse(slurp(dir.path / "report.json"));
  CHECK(report["energy_inequality"]["holds"] == true);
  CHECK(report["regularity_integral"]["bounded"] == true);
}

TEST_CASE("run: determinism") {
  TempDir a("run_det_a"), b("run_det_b");
  RunConfig c = quick_config(a.path);
  c.initial_condition.kind = InitialCondition::Kind::random_band;
  c.initial_condition.seed = 11;
  run_simulation(c);
  c.output_dir = b.path.string();
  run_simulation(c);
  CHECK(slurp(a.path / "series.csv") == slurp(b.path / "series.csv"));
  CHECK(slurp(a.path / "report.json") == slurp(b.path / "report.json"));
}

TEST_CASE("run: unwritable output fails before compute") {
  TempDir dir("run_unwritable");
  std::ofstream(dir.path / "file") << "x";
  RunConfig c = quick_config(dir.path / "file" / "sub");
  CHECK_THROWS_AS(run_simulation(c), IoError);
  c.beta = 3.0;
  c.output_dir = (dir.path / "never").string();
  CHECK_THROWS_AS(run_simulation(c), ConfigError);
  CHECK_FALSE(fs::exists(dir.path / "never"));
}

TEST_CASE("run: blow-up exits with status 2 and keeps artifacts") {
  TempDir dir("run_blowup");
  RunConfig c = quick_config(dir.path);
  c.initial_condition.amplitude = 1e200;
  const RunOutcome o = run_simulation(c);
  CHECK(o.exit_code == kExitBlowUp);
  CHECK(o.status == "blowup");
  CHECK(fs::exists(dir.path / "blowup_last_valid.gsqg"));
  CHECK(fs::exists(dir.path / "config.json"));
  CHECK(fs::exists(dir.path / "series.csv"));
  const json report = json::parse(slurp(dir.path / "report.json"));
  CHECK(report["status"] == "blowup");
  CHECK(report["blowup"].contains("message"));
}

TEST_CASE("verify") {
  TempDir a("verify_a"), b("verify_b");
  RunConfig c = quick_config(a.path);
  const VerificationOutcome o = verify(c);
  CHECK(o.exit_code == kExitOk);
  CHECK(o.failed.empty());
  CHECK(o.properties.size() == 10);
  c.output_dir = b.path.string();
  verify(c, 2);
  CHECK(slurp(a.path / "verification.json") == slurp(b.path / "verification.json"));
  const json doc = json::parse(slurp(a.path / "verification.json"));
  CHECK(doc["all_passed"] == true);
  CHECK(doc["seed"] == 1);

  c.beta = 2.2;
  CHECK_THROWS_AS(verify(c), ConfigError);
  c.beta = 1.2;  // quasilinear: the trilinear suite does not apply
  const VerificationOutcome q = verify(c);
  CHECK(q.exit_code == kExitOk);
}

TEST_CASE("sweep") {
  TempDir dir("sweep");
  RunConfig c = quick_config(dir.path);
  c.t_end = 0.2;
  std::vector<std::pair<double, double>> points;
  for (double a : {0.1, 0.25, 0.4}) {
    for (double off : {0.0, 0.05, 0.1}) points.emplace_back(a, 2 * a + 1 + off);
  }
  const auto rows = sweep(c, points, dir.path / "grid", 2);
  REQUIRE(rows.size() == 9);
  for (const SweepRow& r : rows) {
    CHECK(r.structure == "fully_nonlinear");
    CHECK(r.status == "completed");
    CHECK(r.energy_inequality.value_or(false));
    CHECK(fs::exists(dir.path / "grid" / sweep_point_name(r.alpha, r.beta) / "report.json"));
  }
  const std::string summary = slurp(dir.path / "grid" / "summary.csv");
  CHECK(summary.rfind(std::string(kSummaryHeader) + "\n", 0) == 0);
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 10);
  sweep(c, points, dir.path / "again", 1);
  CHECK(slurp(dir.path / "again" / "summary.csv") == summary);

  SUBCASE("empty grid gives a header-only summary") {
    CHECK(sweep(c, {}, dir.path / "empty").empty());
    CHECK(slurp(dir.path / "empty" / "summary.csv") == std::string(kSummaryHeader) + "\n");
  }
  SUBCASE("a failing point is recorded and the sweep continues") {
    const std::vector<std::pair<double, double>> bad{{0.25, 2.5}, {0.25, 1.6}};
    const auto r = sweep(c, bad, dir.path / "bad");
    CHECK(r[0].status.rfind("error", 0) == 0);
    CHECK(r[1].status == "completed");
  }
  CHECK(sweep_point_name(0.25, 1.6) == "alpha_0.25_beta_1.6");
}

TEST_CASE("command-line interface") {
  TempDir dir("cli");
  RunConfig c = quick_config(dir.path / "from_config");
  std::ofstream(dir.path / "c.json") << dump_config(c);
  const std::string cfg = (dir.path / "c.json").string();

  CHECK(run_cli("run " + cfg) == 0);
  CHECK(fs::exists(dir.path / "from_config" / "series.csv"));
  CHECK(run_cli("run " + cfg + " --output-dir " + (dir.path / "flag").string()) == 0);
  CHECK(fs::exists(dir.path / "flag" / "report.json"));
  CHECK(run_cli("verify " + cfg + " --output-dir " + (dir.path / "ver").string() + " --seed 5 --threads 2") == 0);
  CHECK(json::parse(slurp(dir.path / "ver" / "verification.json"))["seed"] == 5);
  CHECK(run_cli("sweep " + cfg + " --output-dir " + (dir.path / "sw").string() +
                " --alphas 0.1,0.25 --beta-offsets 0,0.1") == 0);
  const std::string summary = slurp(dir.path / "sw" / "summary.csv");
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 5);
  CHECK(run_cli("sweep " + cfg + " --output-dir " + (dir.path / "sw2").string() + " --alphas 0.25 --betas 1.5,1.7") == 0);

  // Environment default applies only when neither the flag nor the config names a directory.
  RunConfig bare = quick_config("");
  json j = json::parse(dump_config(bare));
  j.erase("output_dir");
  std::ofstream(dir.path / "bare.json") << j.dump();
  setenv("GSQG_OUTPUT_ROOT", (dir.path / "env").string().c_str(), 1);
  CHECK(run_cli("run " + (dir.path / "bare.json").string()) == 0);
  CHECK(fs::exists(dir.path / "env" / "series.csv"));
  unsetenv("GSQG_OUTPUT_ROOT");

  // Failure modes.
  json invalid = json::parse(dump_config(c));
  invalid["beta"] = 2.5;
  std::ofstream(dir.path / "invalid.json") << invalid.dump();
  CHECK(run_cli("run " + (dir.path / "invalid.json").string()) == 1);
  CHECK(run_cli("run " + (dir.path / "missing.json").string()) != 0);
  CHECK(run_cli("sweep " + cfg + " --alphas 0.4 --beta-offsets 0.3") == 1);
  CHECK(run_cli("bogus") != 0);
  json blow = json::parse(dump_config(c));
  blow["initial_condition"]["amplitude"] = 1e200;
  blow["output_dir"] = (dir.path / "blow").string();
  std::ofstream(dir.path / "blow.json") << blow.dump();
  CHECK(run_cli("run " + (dir.path / "blow.json").string()) == 2);
}
