#include "fano/dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <string>

namespace fano {

namespace {

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("propagation time must be >= 0 and finite");
  }
}

template <std::size_t N>
std::array<double, N> apply_generator(const Matrix& m, const std::array<double, N>& v) {
  std::array<double, N> out;
  m.apply(v, out);
  return out;
}

bool grid_is_uniform(std::span<const double> t_grid, double* dt_out) {
  if (t_grid.size() < 2) return true;
  const double dt = (t_grid.back() - t_grid.front()) / static_cast<double>(t_grid.size() - 1);
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    if (std::abs(t_grid[i + 1] - t_grid[i] - dt) > 1e-9 * std::max(dt, 1e-300)) return false;
  }
  *dt_out = dt;
  return true;
}

void validate_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("time_series: empty grid");
  if (t_grid.front() != 0.0) throw std::invalid_argument("time_series: grid must start at 0");
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    if (!(t_grid[i + 1] > t_grid[i])) {
      throw std::invalid_argument("time_series: grid must be strictly increasing");
    }
  }
}

// Fixed-step RK4 over `steps` full steps of size dt plus one final step of
// size tail (tail < dt, possibly 0).
template <std::size_t N>
std::array<double, N> rk4_run(const Matrix& m, std::array<double, N> x, std::uint64_t steps,
                              double dt, double tail) {
  auto step = [&m](std::array<double, N>& y, double h) {
    const std::array<double, N> k1 = apply_generator(m, y);
    std::array<double, N> tmp;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    const std::array<double, N> k2 = apply_generator(m, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    const std::array<double, N> k3 = apply_generator(m, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
    const std::array<double, N> k4 = apply_generator(m, tmp);
    for (std::size_t i = 0; i < N; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  };
  for (std::uint64_t k = 0; k < steps; ++k) step(x, dt);
  if (tail > 0.0) step(x, tail);
  return x;
}

}  // namespace

PopulationState propagate(const GeneratorA& a, const PopulationState& x0, double t) {
  require_time(t);
  if (!x0.is_finite()) throw std::invalid_argument("propagate: non-finite initial state");
  if (t == 0.0) return x0;
  const Matrix e = matrix_exponential(a.m * t);
  PopulationState out;
  e.apply(x0.x, out.x);
  return out;
}

OpticalCoherenceState propagate_optical(const GeneratorC& c, const OpticalCoherenceState& z0,
                                        double t) {
  require_time(t);
  if (!z0.is_finite()) throw std::invalid_argument("propagate_optical: non-finite initial state");
  if (t == 0.0) return z0;
  const Matrix e = matrix_exponential(c.m * t);
  OpticalCoherenceState out;
  e.apply(z0.z, out.z);
  return out;
}

TimeSeries time_series(const GeneratorA& a, const PopulationState& x0,
                       std::span<const double> t_grid) {
  validate_grid(t_grid);
  TimeSeries series;
  series.times.assign(t_grid.begin(), t_grid.end());
  series.states.reserve(t_grid.size());

  double dt = 0.0;
  if (grid_is_uniform(t_grid, &dt) && t_grid.size() > 1) {
    const Matrix step = matrix_exponential(a.m * dt);
    PopulationState x = x0;
    series.states.push_back(x);
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
      PopulationState next;
      step.apply(x.x, next.x);
      x = next;
      series.states.push_back(x);
    }
  } else {
    for (double t : t_grid) series.states.push_back(propagate(a, x0, t));
  }
  return series;
}

TimeSeries time_series(const GeneratorA& a, const GeneratorC& c, const PopulationState& x0,
                       const OpticalCoherenceState& z0, std::span<const double> t_grid) {
  TimeSeries series = time_series(a, x0, t_grid);
  series.optical.reserve(t_grid.size());
  double dt = 0.0;
  if (grid_is_uniform(t_grid, &dt) && t_grid.size() > 1) {
    const Matrix step = matrix_exponential(c.m * dt);
    OpticalCoherenceState z = z0;
    series.optical.push_back(z);
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
      OpticalCoherenceState next;
      step.apply(z.z, next.z);
      z = next;
      series.optical.push_back(z);
    }
  } else {
    for (double t : t_grid) series.optical.push_back(propagate_optical(c, z0, t));
  }
  return series;
}

PopulationState rk4_oracle(const GeneratorA& a, const PopulationState& x0, double t, double dt) {
  require_time(t);
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_oracle: dt must be > 0");
  const double norm = a.m.one_norm();
  if (norm > 0.0 && dt > 0.1 / norm) {
    throw std::invalid_argument("rk4_oracle: dt too large for ||A||_1 = " + std::to_string(norm));
  }
  if (t == 0.0) return x0;
  const auto steps = static_cast<std::uint64_t>(t / dt);
  const double tail = t - static_cast<double>(steps) * dt;
  PopulationState out;
  out.x = rk4_run(a.m, x0.x, steps, dt, tail > 0.0 ? tail : 0.0);
  return out;
}

PopulationState rk4_oracle(const GeneratorA& a, const PopulationState& x0, double t) {
  require_time(t);
  const double norm = a.m.one_norm();
  if (norm == 0.0 || t == 0.0) return x0;
  constexpr std::uint64_t kMaxSteps = 10'000'000;

  double dt = 1e-3 / norm;
  PopulationState prev = rk4_oracle(a, x0, t, dt);
  std::uint64_t spent = static_cast<std::uint64_t>(t / dt) + 1;
  while (true) {
    dt *= 0.5;
    const std::uint64_t need = static_cast<std::uint64_t>(t / dt) + 1;
    if (spent + need > kMaxSteps) {
      throw std::runtime_error("rk4_oracle: step budget exhausted before convergence");
    }
    const PopulationState next = rk4_oracle(a, x0, t, dt);
    spent += need;
    double diff = 0.0;
    for (std::size_t i = 0; i < 5; ++i) diff = std::max(diff, std::abs(next.x[i] - prev.x[i]));
    if (diff < 1e-10) return next;
    prev = next;
  }
}

SteadyResult steady_state(const SystemParams& params) {
  params.validate();
  const DerivedRates rates = derive_rates(params);
  const GeneratorA a = build_population_generator(params, rates);

  SteadyResult result;
  result.x_ss = steady_nullspace(a);
  {
    std::array<double, 5> r;
    a.m.apply(result.x_ss.x, r);
    for (double v : r) result.residual = std::max(result.residual, std::abs(v));
  }

  const double gamma_pol_bar = 0.5 * (rates.gamma_a_pol + rates.gamma_b_pol);
  const double horizon = std::max(100.0 / rates.gamma_bar,
                                  20.0 / (params.n_bar * gamma_pol_bar + rates.gamma_bar));

  Matrix propagator = matrix_exponential(a.m * horizon);
  PopulationState x_long;
  propagator.apply(ground_state().x, x_long.x);
  for (int doubling = 0; doubling < 12; ++doubling) {
    propagator = propagator * propagator;
    PopulationState x_next;
    propagator.apply(ground_state().x, x_next.x);
    double step_change = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      step_change = std::max(step_change, std::abs(x_next.x[i] - x_long.x[i]));
    }
    x_long = x_next;
    if (step_change < 3e-14) break;
  }

  for (std::size_t i = 0; i < 5; ++i) {
    result.method_agreement =
        std::max(result.method_agreement, std::abs(x_long.x[i] - result.x_ss.x[i]));
  }
  if (result.method_agreement > 1e-8) {
    throw MethodDisagreement("steady_state: nullspace and long-time propagation differ by " +
                             std::to_string(result.method_agreement));
  }

  result.coherence_magnitude = std::hypot(result.x_ss.x[3], result.x_ss.x[4]);
  const double excited = result.x_ss.x[0] + result.x_ss.x[1];
  result.coherence_ratio = (excited > 1e-15) ? result.coherence_magnitude / excited : 0.0;
  return result;
}

}  // namespace fano
