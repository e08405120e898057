#include "fano/run.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <vector>

#include "fano/analysis.hpp"
#include "fano/csv.hpp"
#include "fano/dynamics.hpp"
#include "fano/svg.hpp"

namespace fano {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void warn_saturation(const RunConfig& config, double n_bar, std::ostream& err) {
  if (config.n_bar_max_warn && n_bar > *config.n_bar_max_warn) {
    err << "warning: n_bar = " << format_double(n_bar) << " exceeds the preset's saturation bound "
        << format_double(*config.n_bar_max_warn) << "; absorption model is unreliable there\n";
  }
}

int run_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  warn_saturation(config, config.params.n_bar, err);

  // Internally everything runs in units where gamma_bar = 1.
  const double rate_unit = config.params.gamma_bar();
  const SystemParams internal = config.params.rescaled(rate_unit);
  const double t_max_internal =
      (config.units == UnitSystem::SI) ? config.t_max * rate_unit : config.t_max;
  const double time_scale = (config.units == UnitSystem::SI) ? 1.0 / rate_unit : 1.0;

  std::vector<double> grid(config.n_samples);
  for (std::size_t i = 0; i < config.n_samples; ++i) {
    grid[i] = t_max_internal * static_cast<double>(i) / static_cast<double>(config.n_samples - 1);
  }
  grid.front() = 0.0;

  const GeneratorA a = build_population_generator(internal);
  const TimeSeries series = time_series(a, ground_state(), grid);

  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "trajectory.csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write trajectory.csv");
    write_trajectory_csv(csv, series, time_scale);
  }

  std::vector<svg::Series> plot(3);
  plot[0] = {"rho_aa", "#c0392b", {}, {}};
  plot[1] = {"rho_bb", "#2471a3", {}, {}};
  plot[2] = {"|rho_ab|", "#1e8449", {}, {}};
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double t = series.times[i] * time_scale;
    plot[0].x.push_back(t);
    plot[0].y.push_back(series.states[i].x[0]);
    plot[1].x.push_back(t);
    plot[1].y.push_back(series.states[i].x[1]);
    plot[2].x.push_back(t);
    plot[2].y.push_back(coherence_magnitude(series.states[i]));
  }
  svg::PlotOptions opts;
  opts.title = "Excited populations and coherence";
  opts.x_label = (config.units == UnitSystem::SI) ? "time [s]" : "time [1/gamma_bar]";
  opts.y_label = "population / coherence";
  write_file(dir / "trajectory.svg", svg::line_plot(plot, opts));

  out << "simulate: wrote " << (dir / "trajectory.csv").string() << " and "
      << (dir / "trajectory.svg").string() << " (" << series.size() << " samples)\n";
  return 0;
}

int run_steady(const RunConfig& config, std::ostream& out, std::ostream& err) {
  warn_saturation(config, config.params.n_bar, err);
  const double rate_unit = config.params.gamma_bar();
  const SystemParams internal = config.params.rescaled(rate_unit);
  const SteadyResult result = steady_state(internal);

  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / "steady.csv", std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write steady.csv");
  write_steady_csv(csv, result, internal.n_bar, internal.delta / internal.gamma_bar());

  out << "steady: |rho_ab| = " << format_double(result.coherence_magnitude)
      << ", ratio = " << format_double(result.coherence_ratio) << ", wrote "
      << (dir / "steady.csv").string() << "\n";
  return 0;
}

int run_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::vector<double> n_axis = config.n_bar_axis.values();
  const std::vector<double> d_axis = config.delta_axis.values();
  warn_saturation(config, n_axis.back(), err);

  const double rate_unit = config.params.gamma_bar();
  const SystemParams internal = config.params.rescaled(rate_unit);
  const SweepResult result = sweep_steady(internal, n_axis, d_axis, effective_jobs(config));

  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "sweep.csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write sweep.csv");
    write_sweep_csv(csv, result);
  }

  const bool ratio_map = config.heatmap_metric == "coh_ratio";
  svg::HeatmapOptions opts;
  opts.title = ratio_map ? "Stationary coherence ratio" : "Stationary coherence magnitude";
  opts.x_label = "n_bar";
  opts.y_label = "delta / gamma_bar";
  opts.value_label = ratio_map ? "|rho_ab| / (rho_aa + rho_bb)" : "|rho_ab|";
  write_file(dir / "sweep.svg",
             svg::heatmap(result.n_bar_axis, result.delta_over_gamma_axis,
                          ratio_map ? result.coherence_ratio : result.coherence_magnitude,
                          result.valid, opts));

  std::size_t failed = 0;
  for (std::size_t i = 0; i < result.n_bar_axis.size(); ++i) {
    for (std::size_t j = 0; j < result.delta_over_gamma_axis.size(); ++j) {
      const std::size_t cell = result.index(i, j);
      if (result.valid[cell]) continue;
      ++failed;
      err << "cell (n_bar=" << format_double(result.n_bar_axis[i])
          << ", delta/gamma=" << format_double(result.delta_over_gamma_axis[j])
          << ") failed: " << result.cell_errors[cell] << "\n";
    }
  }
  out << "sweep: " << (result.cell_count() - failed) << "/" << result.cell_count()
      << " cells valid, wrote " << (dir / "sweep.csv").string() << " and "
      << (dir / "sweep.svg").string() << "\n";
  return failed == 0 ? 0 : 2;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    switch (config.mode) {
      case RunMode::Simulate: return run_simulate(config, out, err);
      case RunMode::Steady: return run_steady(config, out, err);
      case RunMode::Sweep: return run_sweep(config, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace fano
