#include "fano/generators.hpp"

namespace fano {

GeneratorA build_population_generator(const SystemParams& params, const DerivedRates& rates) {
  params.validate();
  const double decay_a = rates.r_a_pol + params.gamma_a_iso;
  const double decay_b = rates.r_b_pol + params.gamma_b_iso;
  const double cross = rates.cross_total();
  const double damping = 0.5 * (rates.r_a_pol + rates.r_b_pol) + rates.gamma_bar;

  Matrix a(5, 5);
  a(0, 0) = -decay_a;
  a(0, 2) = rates.r_a_pol;
  a(0, 3) = -cross;

  a(1, 1) = -decay_b;
  a(1, 2) = rates.r_b_pol;
  a(1, 3) = -cross;

  // Ground-state row balances the two excited rows entry by entry, which
  // makes (1,1,1,0,0) A = 0 hold exactly in floating point.
  a(2, 0) = -a(0, 0);
  a(2, 1) = -a(1, 1);
  a(2, 2) = -(a(0, 2) + a(1, 2));
  a(2, 3) = -(a(0, 3) + a(1, 3));

  a(3, 0) = -0.5 * cross;
  a(3, 1) = -0.5 * cross;
  a(3, 2) = rates.cross_pump;
  a(3, 3) = -damping;
  a(3, 4) = params.delta;

  a(4, 3) = -params.delta;
  a(4, 4) = -damping;
  return GeneratorA{std::move(a)};
}

GeneratorC build_optical_generator(const SystemParams& params, const DerivedRates& rates) {
  params.validate();
  const double half_cross = 0.5 * rates.cross_total();
  const double damping_ac = params.n_bar * (rates.gamma_a_pol + 0.5 * rates.gamma_b_pol) +
                            0.5 * params.gamma_a_iso;
  const double damping_bc = params.n_bar * (rates.gamma_b_pol + 0.5 * rates.gamma_a_pol) +
                            0.5 * params.gamma_b_iso;

  Matrix c(4, 4);
  c(0, 0) = -damping_ac;
  c(0, 1) = params.omega_ac;
  c(0, 2) = -half_cross;

  c(1, 0) = -params.omega_ac;
  c(1, 1) = -damping_ac;
  c(1, 3) = -half_cross;

  c(2, 0) = -half_cross;
  c(2, 2) = -damping_bc;
  c(2, 3) = -params.omega_bc;

  c(3, 1) = -half_cross;
  c(3, 2) = params.omega_bc;
  c(3, 3) = -damping_bc;
  return GeneratorC{std::move(c)};
}

}  // namespace fano
