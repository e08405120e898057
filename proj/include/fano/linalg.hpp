#pragma once

#include <array>
#include <stdexcept>

#include "fano/generators.hpp"
#include "fano/matrix.hpp"
#include "fano/model.hpp"

namespace fano {

// The stationary kernel of a generator could not be isolated (the trace-
// constrained system is numerically singular).
struct DegenerateKernel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exp(M) by scaling and squaring with a single [13/13] Pade approximant:
// s is chosen so ||M / 2^s||_1 <= 5.371920351148152, followed by s squarings.
Matrix matrix_exponential(const Matrix& m);

// Stationary state of dx/dt = A x on the trace-1 affine plane. One row of A
// is replaced by (1,1,1,0,0) with unit right-hand side; all five replacements
// are scanned and the best-conditioned system (1-norm estimate) is solved.
// Throws DegenerateKernel when no replacement yields a usable system.
PopulationState steady_nullspace(const GeneratorA& a);

// Eigenvalues of a Hermitian 3x3 matrix, ascending. Cyclic complex Jacobi;
// accurate to machine precision at this size. Rejects inputs whose
// hermiticity defect exceeds 1e-10 * max(1, scale).
std::array<double, 3> hermitian3_eigenvalues(const DensityMatrix3& rho);

}  // namespace fano
