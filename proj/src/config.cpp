#include "fano/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fano/presets.hpp"

namespace fano {

namespace {

using nlohmann::json;

// CODATA 2018 exact values; used only to convert SI pump descriptions.
constexpr double kHbar = 1.054571817e-34;  // J s
constexpr double kBoltzmann = 1.380649e-23;  // J/K

double as_double(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config: '" + key + "' must be a number");
  return j.get<double>();
}

std::size_t as_count(const json& j, const std::string& key) {
  if (!j.is_number_unsigned()) throw ConfigError("config: '" + key + "' must be a non-negative integer");
  return j.get<std::size_t>();
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
  }
}

void apply_params(const json& obj, RunConfig& cfg) {
  reject_unknown_keys(obj,
                      {"gamma_a_iso", "gamma_b_iso", "p", "delta", "delta_over_gamma_bar", "n_bar",
                       "n_bar_from", "omega_ac", "omega_bc", "field_mode"},
                      "params");
  SystemParams& p = cfg.params;
  if (obj.contains("gamma_a_iso")) p.gamma_a_iso = as_double(obj["gamma_a_iso"], "gamma_a_iso");
  if (obj.contains("gamma_b_iso")) p.gamma_b_iso = as_double(obj["gamma_b_iso"], "gamma_b_iso");
  if (obj.contains("p")) p.p = as_double(obj["p"], "p");
  if (obj.contains("omega_ac")) p.omega_ac = as_double(obj["omega_ac"], "omega_ac");
  if (obj.contains("omega_bc")) p.omega_bc = as_double(obj["omega_bc"], "omega_bc");

  if (obj.contains("delta") && obj.contains("delta_over_gamma_bar")) {
    throw ConfigError("config: give either 'delta' or 'delta_over_gamma_bar', not both");
  }
  if (obj.contains("delta")) p.delta = as_double(obj["delta"], "delta");
  if (obj.contains("delta_over_gamma_bar")) {
    p.delta = as_double(obj["delta_over_gamma_bar"], "delta_over_gamma_bar") * p.gamma_bar();
  }

  if (obj.contains("n_bar") && obj.contains("n_bar_from")) {
    throw ConfigError("config: give either 'n_bar' or 'n_bar_from', not both");
  }
  if (obj.contains("n_bar")) p.n_bar = as_double(obj["n_bar"], "n_bar");
  if (obj.contains("n_bar_from")) {
    const json& src = obj["n_bar_from"];
    reject_unknown_keys(src, {"hbar_omega_over_kT", "temperature_K", "mean_angular_frequency_rad_s"},
                        "params.n_bar_from");
    if (src.contains("hbar_omega_over_kT")) {
      p.n_bar = mean_photon_number(as_double(src["hbar_omega_over_kT"], "hbar_omega_over_kT"));
    } else if (src.contains("temperature_K") && src.contains("mean_angular_frequency_rad_s")) {
      const double temp = as_double(src["temperature_K"], "temperature_K");
      const double omega =
          as_double(src["mean_angular_frequency_rad_s"], "mean_angular_frequency_rad_s");
      if (!(temp > 0.0)) throw ConfigError("config: temperature_K must be > 0");
      p.n_bar = mean_photon_number(kHbar * omega / (kBoltzmann * temp));
    } else {
      throw ConfigError(
          "config: n_bar_from needs 'hbar_omega_over_kT' or "
          "'temperature_K' + 'mean_angular_frequency_rad_s'");
    }
  }

  if (obj.contains("field_mode")) {
    if (!obj["field_mode"].is_string()) throw ConfigError("config: field_mode must be a string");
    const std::string mode = obj["field_mode"].get<std::string>();
    if (mode == "polarized") {
      p.field_mode = FieldMode::PolarizedAnisotropic;
    } else if (mode == "isotropic") {
      p.field_mode = FieldMode::Isotropic;
    } else {
      throw ConfigError("config: field_mode must be 'polarized' or 'isotropic'");
    }
  }
}

AxisSpec parse_axis(const json& obj, const std::string& name, AxisSpec base) {
  reject_unknown_keys(obj, {"min", "max", "count", "scale"}, name);
  if (obj.contains("min")) base.min = as_double(obj["min"], name + ".min");
  if (obj.contains("max")) base.max = as_double(obj["max"], name + ".max");
  if (obj.contains("count")) base.count = as_count(obj["count"], name + ".count");
  if (obj.contains("scale")) {
    const std::string scale = obj["scale"].get<std::string>();
    if (scale == "log") {
      base.log_scale = true;
    } else if (scale == "linear") {
      base.log_scale = false;
    } else {
      throw ConfigError("config: " + name + ".scale must be 'log' or 'linear'");
    }
  }
  return base;
}

}  // namespace

std::vector<double> AxisSpec::values() const {
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(min);
    return out;
  }
  if (log_scale) {
    const double step = std::log(max / min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(min * std::exp(step * static_cast<double>(i)));
    }
  } else {
    const double step = (max - min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out.push_back(min + step * static_cast<double>(i));
  }
  out.back() = max;  // pin the endpoint against rounding
  return out;
}

void AxisSpec::validate(const std::string& name) const {
  if (count == 0) throw ConfigError("config: " + name + " axis must have count >= 1");
  if (!(min <= max)) throw ConfigError("config: " + name + " axis needs min <= max");
  if (log_scale && !(min > 0.0)) {
    throw ConfigError("config: " + name + " log axis needs min > 0");
  }
  if (!std::isfinite(min) || !std::isfinite(max)) {
    throw ConfigError("config: " + name + " axis bounds must be finite");
  }
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (mode == RunMode::Simulate) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("config: t_max must be > 0");
    if (n_samples < 2) throw ConfigError("config: n_samples must be >= 2");
  }
  if (mode == RunMode::Sweep) {
    n_bar_axis.validate("n_bar");
    delta_axis.validate("delta_over_gamma");
    // Axis value admissibility (e.g. negative n_bar) is a per-cell concern;
    // such cells fail in isolation and are marked invalid in the output.
    if (heatmap_metric != "coh_mag" && heatmap_metric != "coh_ratio") {
      throw ConfigError("config: heatmap_metric must be 'coh_mag' or 'coh_ratio'");
    }
  }
  if (output_dir.empty()) throw ConfigError("config: output_dir must not be empty");
}

RunConfig parse_config(const std::string& text, const RunConfig& base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown_keys(
      doc, {"mode", "preset", "params", "time", "sweep", "output_dir", "units", "jobs"}, "config");

  RunConfig cfg = base;
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) throw ConfigError("config: mode must be a string");
    const std::string mode = doc["mode"].get<std::string>();
    if (mode == "simulate") {
      cfg.mode = RunMode::Simulate;
    } else if (mode == "steady") {
      cfg.mode = RunMode::Steady;
    } else if (mode == "sweep") {
      cfg.mode = RunMode::Sweep;
    } else {
      throw ConfigError("config: mode must be simulate, steady or sweep");
    }
  }

  if (doc.contains("preset")) {
    try {
      const Preset pre = preset(doc["preset"].get<std::string>());
      cfg.params = pre.params;
      cfg.preset_name = pre.name;
      cfg.n_bar_max_warn = pre.n_bar_max;
    } catch (const UnknownPreset& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  if (doc.contains("params")) apply_params(doc["params"], cfg);

  if (doc.contains("time")) {
    const json& t = doc["time"];
    reject_unknown_keys(t, {"t_max", "n_samples"}, "time");
    if (t.contains("t_max")) cfg.t_max = as_double(t["t_max"], "t_max");
    if (t.contains("n_samples")) cfg.n_samples = as_count(t["n_samples"], "n_samples");
  }

  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    reject_unknown_keys(s, {"n_bar", "delta_over_gamma", "heatmap_metric"}, "sweep");
    if (s.contains("n_bar")) cfg.n_bar_axis = parse_axis(s["n_bar"], "n_bar", cfg.n_bar_axis);
    if (s.contains("delta_over_gamma")) {
      cfg.delta_axis = parse_axis(s["delta_over_gamma"], "delta_over_gamma", cfg.delta_axis);
    }
    if (s.contains("heatmap_metric")) cfg.heatmap_metric = s["heatmap_metric"].get<std::string>();
  }

  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw ConfigError("config: output_dir must be a string");
    cfg.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("units")) {
    const std::string units = doc["units"].get<std::string>();
    if (units == "dimensionless") {
      cfg.units = UnitSystem::Dimensionless;
    } else if (units == "SI") {
      cfg.units = UnitSystem::SI;
    } else {
      throw ConfigError("config: units must be 'dimensionless' or 'SI'");
    }
  }
  if (doc.contains("jobs")) cfg.jobs = static_cast<unsigned>(as_count(doc["jobs"], "jobs"));
  return cfg;
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), base);
}

unsigned effective_jobs(const RunConfig& config) {
  if (const char* env = std::getenv("FANO_SIM_JOBS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0) return static_cast<unsigned>(parsed);
  }
  return config.jobs;
}

const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Simulate: return "simulate";
    case RunMode::Steady: return "steady";
    default: return "sweep";
  }
}

}  // namespace fano
