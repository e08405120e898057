#pragma once

#include <cmath>
#include <random>
#include <span>

#include "fano/model.hpp"

namespace fano::test {

// Random admissible parameter set in the regimes of interest:
// gamma ratios up to 10, n_bar up to 100, |delta|/gamma_bar up to 10.
inline SystemParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SystemParams p;
  p.gamma_a_iso = std::exp(std::uniform_real_distribution<double>(std::log(0.2), std::log(5.0))(rng));
  p.gamma_b_iso = std::exp(std::uniform_real_distribution<double>(std::log(0.2), std::log(5.0))(rng));
  p.p = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  p.delta = p.gamma_bar() * std::exp(std::uniform_real_distribution<double>(std::log(0.01), std::log(10.0))(rng));
  p.n_bar = std::exp(std::uniform_real_distribution<double>(std::log(0.01), std::log(100.0))(rng));
  p.field_mode = unit(rng) < 0.5 ? FieldMode::PolarizedAnisotropic : FieldMode::Isotropic;
  return p;
}

// Random physical state: simplex populations plus an admissible coherence.
inline PopulationState random_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double a = unit(rng), b = unit(rng), c = unit(rng);
  const double sum = a + b + c;
  a /= sum;
  b /= sum;
  c /= sum;
  const double max_coh = std::sqrt(a * b);
  const double mag = unit(rng) * max_coh;
  const double phase = 2.0 * std::numbers::pi * unit(rng);
  return PopulationState{{a, b, c, mag * std::cos(phase), mag * std::sin(phase)}};
}

// Closed-form stationary state of the symmetric polarized p=0 system
// (gamma_a_iso = gamma_b_iso = gamma). Derived by hand from the generator:
// with r = n_bar * (3/16pi) * gamma and beta = 1 + delta^2/(gamma (r+gamma)),
//   Re rho_ab = r / (beta (3r + gamma) + r),  rho_aa = rho_bb = beta Re rho_ab,
//   Im rho_ab = -delta Re rho_ab / (r + gamma).
// Independent of the nullspace/propagation code paths.
struct SymmetricSteady {
  double rho_aa, rho_cc, re_ab, im_ab;
};

inline SymmetricSteady symmetric_steady_closed_form(double gamma, double delta, double n_bar) {
  const double r = n_bar * polarized_rate_ratio * gamma;
  const double beta = 1.0 + delta * delta / (gamma * (r + gamma));
  const double u = r / (beta * (3.0 * r + gamma) + r);
  const double e = beta * u;
  return {e, 1.0 - 2.0 * e, u, -delta * u / (r + gamma)};
}

// Sign changes of the finite differences of `values` restricted to
// times > t_min, treating |difference| <= floor as zero.
inline int derivative_sign_changes(std::span<const double> times, std::span<const double> values,
                                   double t_min, double floor) {
  int changes = 0;
  int last_sign = 0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (times[i + 1] <= t_min) continue;
    const double diff = values[i + 1] - values[i];
    if (std::abs(diff) <= floor) continue;
    const int sign = diff > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

}  // namespace fano::test
