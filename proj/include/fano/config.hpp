#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fano/model.hpp"

namespace fano {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RunMode { Simulate, Steady, Sweep };
enum class UnitSystem { Dimensionless, SI };

// One sweep axis: `count` points from min to max, linear or log spacing.
struct AxisSpec {
  double min = 0.01;
  double max = 10.0;
  std::size_t count = 20;
  bool log_scale = true;

  std::vector<double> values() const;
  void validate(const std::string& name) const;
};

// Fully resolved run description: config file, preset, and command-line
// overrides already merged. See docs/config.md for the JSON schema.
struct RunConfig {
  RunMode mode = RunMode::Simulate;
  SystemParams params;
  std::optional<std::string> preset_name;
  std::optional<double> n_bar_max_warn;  // saturation threshold from the preset

  // simulate
  double t_max = 20.0;
  std::size_t n_samples = 2048;

  // sweep
  AxisSpec n_bar_axis{0.01, 345.0, 20, true};
  AxisSpec delta_axis{0.01, 10.0, 20, true};
  std::string heatmap_metric = "coh_mag";  // or "coh_ratio"

  std::string output_dir = ".";
  UnitSystem units = UnitSystem::Dimensionless;
  unsigned jobs = 0;  // 0 = hardware concurrency

  void validate() const;  // throws ConfigError
};

// Parses the JSON document in `text` (merging any preset it names) and
// applies it on top of `base`. Throws ConfigError on malformed input.
RunConfig parse_config(const std::string& text, const RunConfig& base = {});

RunConfig load_config_file(const std::string& path, const RunConfig& base = {});

// Effective sweep thread count: FANO_SIM_JOBS overrides config.jobs.
unsigned effective_jobs(const RunConfig& config);

const char* to_string(RunMode mode);

}  // namespace fano
