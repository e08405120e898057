#pragma once

#include "fano/matrix.hpp"
#include "fano/model.hpp"

namespace fano {

// Generator of the population/excited-coherence subsystem,
// dx/dt = A x with x = (rho_aa, rho_bb, rho_cc, Re rho_ab, Im rho_ab).
// Rows 1+2+3 sum to zero (trace conservation), exactly as built.
struct GeneratorA {
  Matrix m;  // 5x5
};

// Generator of the one-photon coherences, dz/dt = C z with
// z = (Re rho_ac, Im rho_ac, Re rho_bc, Im rho_bc).
struct GeneratorC {
  Matrix m;  // 4x4
};

// Entries follow the published element list; indices are 1-based there and
// 0-based here (element A_{ij} of the list is m(i-1, j-1)).
GeneratorA build_population_generator(const SystemParams& params, const DerivedRates& rates);
GeneratorC build_optical_generator(const SystemParams& params, const DerivedRates& rates);

inline GeneratorA build_population_generator(const SystemParams& params) {
  return build_population_generator(params, derive_rates(params));
}
inline GeneratorC build_optical_generator(const SystemParams& params) {
  return build_optical_generator(params, derive_rates(params));
}

}  // namespace fano
