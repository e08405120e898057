#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fano/config.hpp"
#include "fano/csv.hpp"
#include "fano/presets.hpp"
#include "fano/run.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string preset;
  std::string output_dir;
  std::string units;
  std::string field_mode;
  double gamma_a_iso = 0, gamma_b_iso = 0, p = 0, delta = 0, delta_over_gamma_bar = 0;
  double n_bar = 0, omega_ac = 0, omega_bc = 0, t_max = 0;
  std::size_t n_samples = 0;
  unsigned jobs = 0;
};

// Flag names mirror the JSON config keys (see docs/config.md); flags given on
// the command line override the config file.
void add_common_options(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON run configuration");
  cmd->add_option("--preset", f.preset, "parameter preset name");
  cmd->add_option("--out,--output_dir", f.output_dir, "output directory");
  cmd->add_option("--units", f.units, "dimensionless or SI");
  cmd->add_option("--gamma_a_iso", f.gamma_a_iso, "spontaneous decay rate of |a>");
  cmd->add_option("--gamma_b_iso", f.gamma_b_iso, "spontaneous decay rate of |b>");
  cmd->add_option("--p", f.p, "dipole alignment in [-1, 1]");
  cmd->add_option("--delta", f.delta, "excited-state splitting");
  cmd->add_option("--delta_over_gamma_bar", f.delta_over_gamma_bar,
                  "excited-state splitting in units of gamma_bar");
  cmd->add_option("--n_bar", f.n_bar, "mean photon number of the pump");
  cmd->add_option("--omega_ac", f.omega_ac, "a-c transition frequency");
  cmd->add_option("--omega_bc", f.omega_bc, "b-c transition frequency");
  cmd->add_option("--field_mode", f.field_mode, "polarized or isotropic");
}

nlohmann::json overrides_json(const CLI::App* cmd, const CommonFlags& f) {
  using nlohmann::json;
  auto given = [cmd](const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  json doc = json::object();
  if (given("--preset")) doc["preset"] = f.preset;
  json params = json::object();
  if (given("--gamma_a_iso")) params["gamma_a_iso"] = f.gamma_a_iso;
  if (given("--gamma_b_iso")) params["gamma_b_iso"] = f.gamma_b_iso;
  if (given("--p")) params["p"] = f.p;
  if (given("--delta")) params["delta"] = f.delta;
  if (given("--delta_over_gamma_bar")) params["delta_over_gamma_bar"] = f.delta_over_gamma_bar;
  if (given("--n_bar")) params["n_bar"] = f.n_bar;
  if (given("--omega_ac")) params["omega_ac"] = f.omega_ac;
  if (given("--omega_bc")) params["omega_bc"] = f.omega_bc;
  if (given("--field_mode")) params["field_mode"] = f.field_mode;
  if (!params.empty()) doc["params"] = params;
  if (given("--out")) doc["output_dir"] = f.output_dir;
  if (given("--units")) doc["units"] = f.units;
  json time = json::object();
  if (given("--t_max")) time["t_max"] = f.t_max;
  if (given("--n_samples")) time["n_samples"] = f.n_samples;
  if (!time.empty()) doc["time"] = time;
  if (given("--jobs")) doc["jobs"] = f.jobs;
  return doc;
}

int run_preset_command(bool list, const std::string& show) {
  if (list) {
    for (const std::string& name : fano::preset_names()) std::cout << name << "\n";
    return 0;
  }
  const fano::Preset pre = fano::preset(show);  // throws UnknownPreset
  nlohmann::json doc;
  doc["name"] = pre.name;
  doc["description"] = pre.description;
  doc["params"] = {
      {"gamma_a_iso", pre.params.gamma_a_iso},
      {"gamma_b_iso", pre.params.gamma_b_iso},
      {"p", pre.params.p},
      {"field_mode",
       pre.params.field_mode == fano::FieldMode::PolarizedAnisotropic ? "polarized" : "isotropic"},
  };
  if (pre.n_bar_max) doc["n_bar_max"] = *pre.n_bar_max;
  std::cout << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fano-sim: V-type three-level system driven by incoherent radiation"};
  app.require_subcommand(1);

  CommonFlags sim_flags, steady_flags, sweep_flags;

  CLI::App* simulate = app.add_subcommand("simulate", "propagate from the ground state");
  add_common_options(simulate, sim_flags);
  simulate->add_option("--t_max", sim_flags.t_max, "time horizon");
  simulate->add_option("--n_samples", sim_flags.n_samples, "number of samples");

  CLI::App* steady = app.add_subcommand("steady", "stationary state with cross-validation");
  add_common_options(steady, steady_flags);

  CLI::App* sweep = app.add_subcommand("sweep", "steady-state grid over (n_bar, delta/gamma)");
  add_common_options(sweep, sweep_flags);
  sweep->add_option("--jobs", sweep_flags.jobs, "worker threads (FANO_SIM_JOBS overrides)");

  bool list_presets = false;
  std::string show_preset;
  CLI::App* preset_cmd = app.add_subcommand("preset", "list or show parameter presets");
  preset_cmd->add_flag("--list", list_presets, "list preset names");
  preset_cmd->add_option("--show", show_preset, "show one preset as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (preset_cmd->parsed()) {
      if (!list_presets && show_preset.empty()) {
        std::cerr << "error: preset needs --list or --show NAME\n";
        return 1;
      }
      return run_preset_command(list_presets, show_preset);
    }

    CLI::App* cmd = simulate->parsed() ? simulate : steady->parsed() ? steady : sweep;
    CommonFlags& flags =
        simulate->parsed() ? sim_flags : steady->parsed() ? steady_flags : sweep_flags;

    fano::RunConfig config;
    if (cmd->count("--config")) config = fano::load_config_file(flags.config_path);
    config = fano::parse_config(overrides_json(cmd, flags).dump(), config);
    config.mode = simulate->parsed() ? fano::RunMode::Simulate
                  : steady->parsed() ? fano::RunMode::Steady
                                     : fano::RunMode::Sweep;
    return fano::run(config, std::cout, std::cerr);
  } catch (const fano::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const fano::UnknownPreset& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
