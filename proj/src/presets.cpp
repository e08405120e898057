#include "fano/presets.hpp"

namespace fano {

Preset preset(const std::string& name) {
  if (name == "rb87-d1") {
    SystemParams p;
    p.gamma_a_iso = rb87_d1_decay_rate;
    p.gamma_b_iso = rb87_d1_decay_rate;
    p.p = 0.0;
    p.field_mode = FieldMode::PolarizedAnisotropic;
    return Preset{name, p, rb87_n_bar_max,
                  "Rb-87 D1 line V-system (F=1 -> F'=1 Zeeman sublevels), SI rates in rad/s"};
  }
  if (name == "symmetric-dimensionless") {
    SystemParams p;
    p.gamma_a_iso = 1.0;
    p.gamma_b_iso = 1.0;
    p.p = 0.0;
    p.field_mode = FieldMode::PolarizedAnisotropic;
    return Preset{name, p, std::nullopt, "symmetric decay, gamma_bar = 1 rate units"};
  }
  if (name == "asymmetric-10") {
    SystemParams p;
    p.gamma_a_iso = 10.0;
    p.gamma_b_iso = 1.0;
    p.p = 0.0;
    p.field_mode = FieldMode::PolarizedAnisotropic;
    return Preset{name, p, std::nullopt, "asymmetric decay gamma_a = 10 gamma_b"};
  }
  throw UnknownPreset("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
  return {"rb87-d1", "symmetric-dimensionless", "asymmetric-10"};
}

}  // namespace fano
