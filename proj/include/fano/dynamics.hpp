#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "fano/generators.hpp"
#include "fano/linalg.hpp"
#include "fano/model.hpp"

namespace fano {

// Sampled trajectory. `optical` is empty unless the optical subsystem was
// propagated alongside the populations.
struct TimeSeries {
  std::vector<double> times;
  std::vector<PopulationState> states;
  std::vector<OpticalCoherenceState> optical;

  std::size_t size() const { return times.size(); }
};

// x(t) = exp(A t) x(0). Rejects t < 0.
PopulationState propagate(const GeneratorA& a, const PopulationState& x0, double t);

// z(t) = exp(C t) z(0). Rejects t < 0.
OpticalCoherenceState propagate_optical(const GeneratorC& c, const OpticalCoherenceState& z0,
                                        double t);

// Samples the trajectory on `t_grid` (ascending from 0). Uniform grids use a
// single exp(A dt) with repeated multiplication; otherwise one exponential
// per sample.
TimeSeries time_series(const GeneratorA& a, const PopulationState& x0,
                       std::span<const double> t_grid);
TimeSeries time_series(const GeneratorA& a, const GeneratorC& c, const PopulationState& x0,
                       const OpticalCoherenceState& z0, std::span<const double> t_grid);

// Classical fixed-step 4th-order Runge-Kutta, independent of the matrix
// exponential path. Rejects dt <= 0 and dt > 0.1/||A||_1.
PopulationState rk4_oracle(const GeneratorA& a, const PopulationState& x0, double t, double dt);

// Same, with dt starting at 1e-3/||A||_1 and halved until two successive
// results agree within 1e-10 (at most 1e7 total steps).
PopulationState rk4_oracle(const GeneratorA& a, const PopulationState& x0, double t);

// Nullspace and long-time propagation disagree beyond tolerance.
struct MethodDisagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SteadyResult {
  PopulationState x_ss;
  double residual = 0.0;           // ||A x_ss||_inf
  double method_agreement = 0.0;   // ||x_nullspace - x_longtime||_inf
  double coherence_magnitude = 0.0;
  double coherence_ratio = 0.0;    // 0 when no excited population
};

// Stationary state starting from the ground state: steady_nullspace
// cross-validated against long-time propagation. The propagation horizon
// starts at max(100/gamma_bar, 20/(n_bar gamma_pol_bar + gamma_bar)) and is
// doubled (propagator squaring) until two successive horizons agree within
// 3e-14, so slow relaxation modes cannot fake a disagreement.
// Throws MethodDisagreement when the two routes differ by more than 1e-8.
SteadyResult steady_state(const SystemParams& params);

}  // namespace fano
