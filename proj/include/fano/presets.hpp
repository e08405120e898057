#pragma once

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fano/model.hpp"

namespace fano {

struct UnknownPreset : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// D1-line spontaneous decay rate of Rb-87, 2*pi * 5.75 MHz, in rad product/s.
inline const double rb87_d1_decay_rate = 2.0 * std::numbers::pi * 5.75e6;
// Mean photon number at which the Rb-87 D1 pump reaches saturation intensity.
inline const double rb87_n_bar_max = 345.0;

struct Preset {
  std::string name;
  SystemParams params;
  std::optional<double> n_bar_max;  // saturation warning threshold
  std::string description;
};

// Known names: "rb87-d1", "symmetric-dimensionless", "asymmetric-10".
// Throws UnknownPreset otherwise.
Preset preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace fano
