#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <doctest.h>

#include "fano/config.hpp"
#include "fano/csv.hpp"
#include "fano/dynamics.hpp"
#include "fano/presets.hpp"
#include "fano/run.hpp"
#include "fano/svg.hpp"

using namespace fano;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("fano_sim_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kUnderdampedConfig = R"({
  "mode": "simulate",
  "params": {"gamma_a_iso": 1.0, "gamma_b_iso": 1.0, "p": 0.0,
             "delta_over_gamma_bar": 10.0, "n_bar": 0.06, "field_mode": "polarized"},
  "time": {"t_max": 20.0, "n_samples": 2048}
})";

}  // namespace

TEST_CASE("presets") {
  const Preset rb = preset("rb87-d1");
  CHECK(rb.params.gamma_a_iso == doctest::Approx(2.0 * std::numbers::pi * 5.75e6).epsilon(1e-15));
  CHECK(rb.params.gamma_b_iso == rb.params.gamma_a_iso);
  CHECK(rb.params.p == 0.0);
  CHECK(rb.params.field_mode == FieldMode::PolarizedAnisotropic);
  REQUIRE(rb.n_bar_max.has_value());
  CHECK(*rb.n_bar_max == 345.0);

  const Preset sym = preset("symmetric-dimensionless");
  CHECK(sym.params.gamma_a_iso == 1.0);
  CHECK(sym.params.gamma_b_iso == 1.0);

  const Preset asym = preset("asymmetric-10");
  CHECK(asym.params.gamma_a_iso == 10.0);
  CHECK(asym.params.gamma_b_iso == 1.0);

  CHECK_THROWS_AS(preset("no-such-preset"), UnknownPreset);
  CHECK(preset_names().size() == 3);
}

TEST_CASE("config parsing") {
  SUBCASE("full document") {
    const RunConfig cfg = parse_config(kUnderdampedConfig);
    CHECK(cfg.mode == RunMode::Simulate);
    CHECK(cfg.params.delta == doctest::Approx(10.0));
    CHECK(cfg.params.n_bar == 0.06);
    CHECK(cfg.t_max == 20.0);
    CHECK(cfg.n_samples == 2048);
    CHECK_NOTHROW(cfg.validate());
  }
  SUBCASE("preset merge with overrides") {
    const RunConfig cfg = parse_config(R"({
      "mode": "steady",
      "preset": "rb87-d1",
      "params": {"n_bar": 10.0, "delta_over_gamma_bar": 0.5}
    })");
    CHECK(cfg.params.gamma_a_iso == doctest::Approx(rb87_d1_decay_rate));
    CHECK(cfg.params.n_bar == 10.0);
    CHECK(cfg.params.delta == doctest::Approx(0.5 * rb87_d1_decay_rate));
    CHECK(cfg.n_bar_max_warn.has_value());
  }
  SUBCASE("layered override keeps earlier fields") {
    const RunConfig base = parse_config(kUnderdampedConfig);
    const RunConfig cfg = parse_config(R"({"params": {"n_bar": 100.0}})", base);
    CHECK(cfg.params.n_bar == 100.0);
    CHECK(cfg.params.delta == doctest::Approx(10.0));
    CHECK(cfg.n_samples == 2048);
  }
  SUBCASE("n_bar from occupation helper") {
    const RunConfig cfg = parse_config(R"({
      "params": {"n_bar_from": {"hbar_omega_over_kT": 0.6931471805599453}}
    })");
    CHECK(cfg.params.n_bar == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"mode": "warp"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"unknown_key": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"params": {"delta": 1, "delta_over_gamma_bar": 1}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"preset": "bogus"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"params": {"gamma_a_iso": "one"}})"), ConfigError);

    RunConfig bad = parse_config(kUnderdampedConfig);
    bad.t_max = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = parse_config(kUnderdampedConfig);
    bad.n_samples = 1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
  }
  SUBCASE("axis specs") {
    const RunConfig cfg = parse_config(R"({
      "mode": "sweep",
      "sweep": {"n_bar": {"min": 1, "max": 100, "count": 3, "scale": "log"},
                 "delta_over_gamma": {"min": 0, "max": 2, "count": 5, "scale": "linear"}}
    })");
    const auto n = cfg.n_bar_axis.values();
    REQUIRE(n.size() == 3);
    CHECK(n[0] == doctest::Approx(1.0));
    CHECK(n[1] == doctest::Approx(10.0));
    CHECK(n[2] == doctest::Approx(100.0));
    const auto d = cfg.delta_axis.values();
    REQUIRE(d.size() == 5);
    CHECK(d[2] == doctest::Approx(1.0));
    CHECK_NOTHROW(cfg.validate());
  }
}

TEST_CASE("FANO_SIM_JOBS overrides the configured job count") {
  RunConfig cfg;
  cfg.jobs = 3;
  ::setenv("FANO_SIM_JOBS", "7", 1);
  CHECK(effective_jobs(cfg) == 7);
  ::setenv("FANO_SIM_JOBS", "junk", 1);
  CHECK(effective_jobs(cfg) == 3);
  ::unsetenv("FANO_SIM_JOBS");
  CHECK(effective_jobs(cfg) == 3);
}

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double v = std::ldexp(u(rng), trial % 60 - 30);
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("simulate run: files, row count, determinism") {
  const fs::path dir = fresh_dir("simulate");
  RunConfig cfg = parse_config(kUnderdampedConfig);
  cfg.output_dir = dir.string();
  std::ostringstream out, err;
  REQUIRE(run(cfg, out, err) == 0);
  CHECK(err.str().empty());

  const std::string csv_bytes = slurp(dir / "trajectory.csv");
  std::istringstream csv_in(csv_bytes);
  const CsvTable table = parse_csv(csv_in);
  REQUIRE(table.header.size() == 7);
  CHECK(table.header[0] == "time");
  CHECK(table.header[6] == "coh_mag");
  CHECK(table.rows.size() == 2048);
  CHECK(table.rows.front()[table.column("rho_cc")] == 1.0);
  CHECK(table.rows.back()[table.column("time")] == 20.0);

  const std::string svg_bytes = slurp(dir / "trajectory.svg");
  CHECK(svg_bytes.find("<polyline") != std::string::npos);

  // Byte determinism across reruns.
  const fs::path dir2 = fresh_dir("simulate2");
  cfg.output_dir = dir2.string();
  std::ostringstream out2, err2;
  REQUIRE(run(cfg, out2, err2) == 0);
  CHECK(slurp(dir2 / "trajectory.csv") == csv_bytes);
  CHECK(slurp(dir2 / "trajectory.svg") == svg_bytes);
}

TEST_CASE("csv round-trip reproduces the plotted polylines") {
  const fs::path dir = fresh_dir("roundtrip");
  RunConfig cfg = parse_config(kUnderdampedConfig);
  cfg.output_dir = dir.string();
  cfg.n_samples = 256;
  std::ostringstream out, err;
  REQUIRE(run(cfg, out, err) == 0);

  std::istringstream csv_in(slurp(dir / "trajectory.csv"));
  const CsvTable table = parse_csv(csv_in);

  std::vector<svg::Series> series(3);
  series[0] = {"rho_aa", "#c0392b", {}, {}};
  series[1] = {"rho_bb", "#2471a3", {}, {}};
  series[2] = {"|rho_ab|", "#1e8449", {}, {}};
  const std::size_t t_col = table.column("time");
  const std::size_t cols[3] = {table.column("rho_aa"), table.column("rho_bb"),
                               table.column("coh_mag")};
  for (const auto& row : table.rows) {
    for (int s = 0; s < 3; ++s) {
      series[s].x.push_back(row[t_col]);
      series[s].y.push_back(row[cols[s]]);
    }
  }
  svg::PlotOptions opts;
  opts.title = "Excited populations and coherence";
  opts.x_label = "time [1/gamma_bar]";
  opts.y_label = "population / coherence";
  CHECK(svg::line_plot(series, opts) == slurp(dir / "trajectory.svg"));
}

TEST_CASE("steady run: no pump gives the ground-state row") {
  const fs::path dir = fresh_dir("steady");
  RunConfig cfg = parse_config(R"({
    "mode": "steady",
    "params": {"n_bar": 0.0, "delta_over_gamma_bar": 0.1}
  })");
  cfg.output_dir = dir.string();
  std::ostringstream out, err;
  REQUIRE(run(cfg, out, err) == 0);

  std::istringstream csv_in(slurp(dir / "steady.csv"));
  const CsvTable table = parse_csv(csv_in);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][table.column("rho_cc")] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(table.rows[0][table.column("coh_mag")]) <= 1e-12);
}

TEST_CASE("sweep run: grid files and invalid-cell exit code") {
  const fs::path dir = fresh_dir("sweep");
  RunConfig cfg = parse_config(R"({
    "mode": "sweep",
    "sweep": {"n_bar": {"min": 1, "max": 100, "count": 3, "scale": "log"},
               "delta_over_gamma": {"min": 0.1, "max": 10, "count": 3, "scale": "log"}}
  })");
  cfg.output_dir = dir.string();
  std::ostringstream out, err;
  REQUIRE(run(cfg, out, err) == 0);
  CHECK(err.str().empty());

  std::istringstream csv_in(slurp(dir / "sweep.csv"));
  const CsvTable table = parse_csv(csv_in);
  REQUIRE(table.header.size() == 7);
  CHECK(table.header[0] == "n_bar");
  CHECK(table.header[6] == "valid");
  CHECK(table.rows.size() == 9);
  for (const auto& row : table.rows) CHECK(row[6] == 1.0);
  CHECK(slurp(dir / "sweep.svg").find("<rect") != std::string::npos);

  // A negative n_bar cell fails in isolation and flips the exit code to 2.
  const fs::path dir2 = fresh_dir("sweep_invalid");
  RunConfig bad = cfg;
  bad.output_dir = dir2.string();
  bad.n_bar_axis = AxisSpec{-1.0, 10.0, 2, false};
  std::ostringstream out2, err2;
  CHECK(run(bad, out2, err2) == 2);
  CHECK(err2.str().find("failed") != std::string::npos);
  std::istringstream csv2(slurp(dir2 / "sweep.csv"));
  const CsvTable table2 = parse_csv(csv2);
  std::size_t invalid = 0;
  for (const auto& row : table2.rows) invalid += row[6] == 0.0 ? 1 : 0;
  CHECK(invalid == 3);  // the n_bar = -1 row across all delta cells
  CHECK(slurp(dir2 / "sweep.svg").find("#bbbbbb") != std::string::npos);
}

TEST_CASE("simulate output matches the RK4 oracle mid-trajectory") {
  const fs::path dir = fresh_dir("oracle_row");
  RunConfig cfg = parse_config(kUnderdampedConfig);
  cfg.output_dir = dir.string();
  cfg.n_samples = 512;
  std::ostringstream out, err;
  REQUIRE(run(cfg, out, err) == 0);

  std::istringstream csv_in(slurp(dir / "trajectory.csv"));
  const CsvTable table = parse_csv(csv_in);
  const std::size_t row = 256;
  const double t = table.rows[row][table.column("time")];

  const GeneratorA a = build_population_generator(cfg.params);
  const PopulationState oracle = rk4_oracle(a, ground_state(), t, 1e-4);
  CHECK(std::abs(table.rows[row][table.column("rho_aa")] - oracle.x[0]) <= 1e-8);
  CHECK(std::abs(table.rows[row][table.column("re_rho_ab")] - oracle.x[3]) <= 1e-8);
  CHECK(std::abs(table.rows[row][table.column("im_rho_ab")] - oracle.x[4]) <= 1e-8);
}

TEST_CASE("rb87 sweep peaks at small splitting and strong pumping") {
  const fs::path dir = fresh_dir("rb87_corner");
  RunConfig cfg = parse_config(R"({
    "mode": "sweep",
    "preset": "rb87-d1",
    "sweep": {"n_bar": {"min": 1, "max": 345, "count": 8, "scale": "log"},
               "delta_over_gamma": {"min": 0.01, "max": 10, "count": 8, "scale": "log"}}
  })");
  cfg.output_dir = dir.string();
  std::ostringstream out, err;
  REQUIRE(run(cfg, out, err) == 0);

  std::istringstream csv_in(slurp(dir / "sweep.csv"));
  const CsvTable table = parse_csv(csv_in);
  const std::size_t coh = table.column("coh_mag");
  std::size_t best = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r][coh] > table.rows[best][coh]) best = r;
  }
  CHECK(table.rows[best][table.column("n_bar")] == doctest::Approx(345.0));
  CHECK(table.rows[best][table.column("delta_over_gamma")] == doctest::Approx(0.01));
}

TEST_CASE("saturation warning fires only above the preset bound") {
  RunConfig cfg = parse_config(R"({
    "mode": "steady",
    "preset": "rb87-d1",
    "params": {"n_bar": 400.0, "delta_over_gamma_bar": 0.5}
  })");
  const fs::path dir = fresh_dir("warn");
  cfg.output_dir = dir.string();
  std::ostringstream out, err;
  REQUIRE(run(cfg, out, err) == 0);
  CHECK(err.str().find("saturation") != std::string::npos);

  cfg.params.n_bar = 345.0;
  std::ostringstream out2, err2;
  REQUIRE(run(cfg, out2, err2) == 0);
  CHECK(err2.str().empty());
}

TEST_CASE("SI unit runs write seconds and match the dimensionless trajectory") {
  RunConfig si = parse_config(R"({
    "mode": "simulate",
    "preset": "rb87-d1",
    "params": {"n_bar": 1.0, "delta_over_gamma_bar": 0.1},
    "units": "SI",
    "time": {"t_max": 5.53e-7, "n_samples": 64}
  })");
  const fs::path dir = fresh_dir("si");
  si.output_dir = dir.string();
  std::ostringstream out, err;
  REQUIRE(run(si, out, err) == 0);
  std::istringstream csv_in(slurp(dir / "trajectory.csv"));
  const CsvTable table = parse_csv(csv_in);
  CHECK(table.rows.back()[0] == doctest::Approx(5.53e-7).epsilon(1e-12));

  // Same dimensionless time horizon: t_max * gamma_bar.
  RunConfig dimless = parse_config(R"({
    "mode": "simulate",
    "params": {"n_bar": 1.0, "delta_over_gamma_bar": 0.1},
    "time": {"n_samples": 64}
  })");
  dimless.t_max = 5.53e-7 * rb87_d1_decay_rate;
  const fs::path dir2 = fresh_dir("si_ref");
  dimless.output_dir = dir2.string();
  std::ostringstream out2, err2;
  REQUIRE(run(dimless, out2, err2) == 0);
  std::istringstream csv2(slurp(dir2 / "trajectory.csv"));
  const CsvTable ref = parse_csv(csv2);
  for (std::size_t i = 0; i < ref.rows.size(); ++i) {
    CHECK(table.rows[i][1] == doctest::Approx(ref.rows[i][1]).epsilon(1e-12));
    CHECK(table.rows[i][6] == doctest::Approx(ref.rows[i][6]).epsilon(1e-12));
  }
}

TEST_CASE("ramp_color endpoints") {
  CHECK(svg::ramp_color(0.0) == "#440154");
  CHECK(svg::ramp_color(1.0) == "#fde725");
  CHECK(svg::ramp_color(-5.0) == "#440154");
  CHECK(svg::ramp_color(5.0) == "#fde725");
}

TEST_CASE("log-axis line plot emits decade ticks") {
  svg::Series s{"coh", "#1e8449", {}, {}};
  for (int i = 0; i <= 100; ++i) {
    const double x = 0.01 * std::pow(10.0, 4.0 * i / 100.0);
    s.x.push_back(x);
    s.y.push_back(x / (1.0 + x));
  }
  svg::PlotOptions opts;
  opts.title = "log sweep";
  opts.log_x = true;
  const std::string plot = svg::line_plot(std::vector<svg::Series>{s}, opts);
  CHECK(plot.find(">0.01<") != std::string::npos);
  CHECK(plot.find(">1<") != std::string::npos);
  CHECK(plot.find(">100<") != std::string::npos);
  CHECK(plot.find("<polyline") != std::string::npos);
}
