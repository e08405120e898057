#include "fano/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fano {

void SystemParams::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("SystemParams: " + msg); };
  for (double v : {gamma_a_iso, gamma_b_iso, p, delta, n_bar, omega_ac, omega_bc}) {
    if (!std::isfinite(v)) fail("non-finite field");
  }
  if (gamma_a_iso <= 0.0) fail("gamma_a_iso must be > 0");
  if (gamma_b_iso <= 0.0) fail("gamma_b_iso must be > 0");
  if (p < -1.0 || p > 1.0) fail("p must lie in [-1, 1]");
  if (n_bar < 0.0) fail("n_bar must be >= 0");
  if (omega_ac < 0.0 || omega_bc < 0.0) fail("transition frequencies must be >= 0");
  if (omega_ac != 0.0 && omega_bc != 0.0) {
    const double defect = std::abs(omega_ac - omega_bc - delta);
    if (defect > 1e-9 * std::max(std::abs(omega_ac), 1.0)) {
      fail("omega_ac - omega_bc must equal delta");
    }
  }
}

SystemParams SystemParams::rescaled(double rate_unit) const {
  if (!(rate_unit > 0.0) || !std::isfinite(rate_unit)) {
    throw std::invalid_argument("SystemParams::rescaled: rate_unit must be > 0");
  }
  SystemParams out = *this;
  out.gamma_a_iso /= rate_unit;
  out.gamma_b_iso /= rate_unit;
  out.delta /= rate_unit;
  out.omega_ac /= rate_unit;
  out.omega_bc /= rate_unit;
  return out;
}

DerivedRates derive_rates(const SystemParams& params) {
  params.validate();
  DerivedRates r;
  r.gamma_bar = params.gamma_bar();
  const double root_iso = std::sqrt(params.gamma_a_iso * params.gamma_b_iso);
  r.cross_decay = params.p * root_iso;
  if (params.field_mode == FieldMode::PolarizedAnisotropic) {
    r.gamma_a_pol = polarized_rate_ratio * params.gamma_a_iso;
    r.gamma_b_pol = polarized_rate_ratio * params.gamma_b_iso;
    // The polarized pump drives both transitions through the same field mode,
    // so its interference term does not carry p.
    r.cross_pump = std::sqrt(r.gamma_a_pol * r.gamma_b_pol) * params.n_bar;
  } else {
    r.gamma_a_pol = params.gamma_a_iso;
    r.gamma_b_pol = params.gamma_b_iso;
    r.cross_pump = params.p * root_iso * params.n_bar;
  }
  r.r_a_pol = params.n_bar * r.gamma_a_pol;
  r.r_b_pol = params.n_bar * r.gamma_b_pol;
  return r;
}

double mean_photon_number(double hbar_omega_over_kT) {
  if (!(hbar_omega_over_kT > 0.0) || !std::isfinite(hbar_omega_over_kT)) {
    throw std::invalid_argument("mean_photon_number: argument must be > 0");
  }
  return 1.0 / std::expm1(hbar_omega_over_kT);
}

bool PopulationState::is_finite() const {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

bool PopulationState::is_physical(double tol) const {
  if (!is_finite()) return false;
  if (std::abs(trace() - 1.0) > tol) return false;
  for (int i = 0; i < 3; ++i) {
    if (x[i] < -tol || x[i] > 1.0 + tol) return false;
  }
  return x[3] * x[3] + x[4] * x[4] <= x[0] * x[1] + tol;
}

bool OpticalCoherenceState::is_finite() const {
  for (double v : z) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double DensityMatrix3::hermiticity_defect() const {
  double defect = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      defect = std::max(defect, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return defect;
}

DensityMatrix3 density_from_state(const PopulationState& x, const OpticalCoherenceState& z) {
  if (!x.is_finite() || !z.is_finite()) {
    throw std::invalid_argument("density_from_state: non-finite input");
  }
  DensityMatrix3 rho;
  rho(0, 0) = x.x[0];
  rho(1, 1) = x.x[1];
  rho(2, 2) = x.x[2];
  rho(0, 1) = {x.x[3], x.x[4]};
  rho(1, 0) = std::conj(rho(0, 1));
  rho(0, 2) = {z.z[0], z.z[1]};
  rho(2, 0) = std::conj(rho(0, 2));
  rho(1, 2) = {z.z[2], z.z[3]};
  rho(2, 1) = std::conj(rho(1, 2));
  return rho;
}

}  // namespace fano
