#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fano/dynamics.hpp"
#include "fano/model.hpp"

namespace fano {

double coherence_magnitude(const PopulationState& x);

struct NoExcitedPopulation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// |rho_ab| / (rho_aa + rho_bb); throws NoExcitedPopulation when the excited
// population is <= 1e-15.
double coherence_ratio(const PopulationState& x);

enum class DampingRegime { Underdamped, Overdamped, Crossover };
enum class PumpingRegime { Weak, Strong, Intermediate };

// Advisory classification; never branches the physics. Thresholds:
// underdamped |delta|/gamma_bar >= 5, overdamped <= 0.2; strong n_bar >= 5,
// weak <= 0.2; everything else crossover/intermediate.
struct RegimeLabel {
  DampingRegime damping;
  PumpingRegime pumping;
};

RegimeLabel classify_regime(const SystemParams& params);

const char* to_string(DampingRegime r);
const char* to_string(PumpingRegime r);

// Dominant angular frequency of Re rho_ab: detrended by its steady value,
// Hann-windowed, FFT peak with three-point parabolic refinement. Returns
// nullopt when no peak stands 10x above the median spectral power.
// Requires a uniform grid with >= 256 samples.
std::optional<double> oscillation_frequency(const TimeSeries& series);

struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Earliest time after which |rho_ab|(t) stays within epsilon of its final
// value. Throws NotConverged unless the last 10% of samples vary by less
// than epsilon/10.
double coherence_lifetime(const TimeSeries& series, double epsilon);

// Steady-state metrics over an (n_bar, delta/gamma_bar) grid. Storage is
// row-major with the n_bar index outermost.
struct SweepResult {
  std::vector<double> n_bar_axis;
  std::vector<double> delta_over_gamma_axis;
  std::vector<double> coherence_magnitude;
  std::vector<double> coherence_ratio;
  std::vector<double> population_a;
  std::vector<double> population_b;
  std::vector<std::uint8_t> valid;
  std::vector<std::string> cell_errors;  // empty string for valid cells

  std::size_t index(std::size_t i_n_bar, std::size_t j_delta) const {
    return i_n_bar * delta_over_gamma_axis.size() + j_delta;
  }
  std::size_t cell_count() const { return n_bar_axis.size() * delta_over_gamma_axis.size(); }
};

// Evaluates steady_state per cell; n_bar and delta are taken from the axes
// (delta = axis value * gamma_bar of the template), everything else from
// params_template. Cells run concurrently on `jobs` threads (0 = hardware
// concurrency); failures are recorded per cell, never fatal. Output is
// independent of the execution order.
SweepResult sweep_steady(const SystemParams& params_template, std::span<const double> n_bar_axis,
                         std::span<const double> delta_over_gamma_axis, unsigned jobs = 0);

struct PositivityReport {
  double min_eigenvalue = 0.0;
  std::size_t min_index = 0;  // sample index attaining the minimum
  bool flagged = false;       // min_eigenvalue < -tol
};

// Minimum density-matrix eigenvalue over the trajectory (optical coherences
// included when present).
PositivityReport positivity_report(const TimeSeries& series, double tol);

}  // namespace fano
