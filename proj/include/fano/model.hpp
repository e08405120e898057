#pragma once

#include <array>
#include <complex>
#include <numbers>

namespace fano {

// Angular distribution of the incoherent driving field.
enum class FieldMode {
  PolarizedAnisotropic,  // directional, linearly polarized hot reservoir + isotropic vacuum
  Isotropic,             // single isotropic reservoir at finite occupation
};

// Coupling of a transition to the directional polarized reservoir, relative
// to its isotropic spontaneous rate: gamma_pol = (3/16pi) * gamma_iso.
inline const double polarized_rate_ratio = 3.0 / (16.0 * std::numbers::pi);

// Physical inputs of the V-type three-level system. Rates and frequencies are
// in a common angular-frequency unit; the library itself is unit-agnostic.
struct SystemParams {
  double gamma_a_iso = 1.0;  // isotropic spontaneous decay of |a>
  double gamma_b_iso = 1.0;  // isotropic spontaneous decay of |b>
  double p = 0.0;            // dipole alignment, cos(angle between dipoles), in [-1, 1]
  double delta = 0.0;        // excited-state splitting, omega_ac - omega_bc
  double n_bar = 0.0;        // mean photon number of the pump
  double omega_ac = 0.0;     // |a> <-> |c> transition frequency (optical subsystem only)
  double omega_bc = 0.0;     // |b> <-> |c> transition frequency
  FieldMode field_mode = FieldMode::PolarizedAnisotropic;

  double gamma_bar() const { return 0.5 * (gamma_a_iso + gamma_b_iso); }

  // Throws std::invalid_argument on gamma <= 0, |p| > 1, n_bar < 0, non-finite
  // fields, or inconsistent (omega_ac, omega_bc, delta).
  void validate() const;

  // Same system expressed in units where `rate_unit` is 1 (divides every rate
  // and frequency; dimensionless fields unchanged).
  SystemParams rescaled(double rate_unit) const;
};

// Rates entering the generators, derived once from SystemParams.
//
// In polarized mode the pump channel couples at gamma_l_pol = (3/16pi) gamma_l_iso
// and the pump-side interference term does not carry p; in isotropic mode the
// pump channel couples at gamma_l_iso and both interference terms carry p.
struct DerivedRates {
  double gamma_a_pol = 0.0;  // pump-channel coupling of |a>
  double gamma_b_pol = 0.0;  // pump-channel coupling of |b>
  double r_a_pol = 0.0;      // pump rate n_bar * gamma_a_pol
  double r_b_pol = 0.0;      // pump rate n_bar * gamma_b_pol
  double gamma_bar = 0.0;    // (gamma_a_iso + gamma_b_iso) / 2
  double cross_pump = 0.0;   // interference in absorption/stimulated emission
  double cross_decay = 0.0;  // interference in spontaneous emission, p sqrt(ga gb)

  double cross_total() const { return cross_pump + cross_decay; }
};

DerivedRates derive_rates(const SystemParams& params);

// Bose-Einstein occupation 1/(exp(x) - 1) for x = hbar*omega/(kB*T) > 0.
double mean_photon_number(double hbar_omega_over_kT);

// x = (rho_aa, rho_bb, rho_cc, Re rho_ab, Im rho_ab)
struct PopulationState {
  std::array<double, 5> x{};

  double rho_aa() const { return x[0]; }
  double rho_bb() const { return x[1]; }
  double rho_cc() const { return x[2]; }
  double re_rho_ab() const { return x[3]; }
  double im_rho_ab() const { return x[4]; }
  double trace() const { return x[0] + x[1] + x[2]; }

  bool is_finite() const;
  // Trace 1, populations in [0, 1], |rho_ab|^2 <= rho_aa rho_bb, all within tol.
  bool is_physical(double tol = 1e-10) const;
};

inline PopulationState ground_state() { return PopulationState{{0.0, 0.0, 1.0, 0.0, 0.0}}; }

// z = (Re rho_ac, Im rho_ac, Re rho_bc, Im rho_bc)
struct OpticalCoherenceState {
  std::array<double, 4> z{};
  bool is_finite() const;
};

// 3x3 complex density matrix in the basis (|a>, |b>, |c>), row-major.
struct DensityMatrix3 {
  std::array<std::complex<double>, 9> m{};

  std::complex<double>& operator()(std::size_t i, std::size_t j) { return m[3 * i + j]; }
  std::complex<double> operator()(std::size_t i, std::size_t j) const { return m[3 * i + j]; }

  double trace_real() const { return m[0].real() + m[4].real() + m[8].real(); }
  double hermiticity_defect() const;  // max |m_ij - conj(m_ji)|
};

// Assembles the Hermitian density matrix from the two state vectors.
DensityMatrix3 density_from_state(const PopulationState& x, const OpticalCoherenceState& z = {});

}  // namespace fano
