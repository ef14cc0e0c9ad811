#pragma once

#include <Eigen/Dense>

#include "daqc/hamiltonian.hpp"
#include "daqc/state.hpp"

namespace daqc {

// Applies exp(+i H t) to a state. Hamiltonians that are diagonal in the
// computational basis (Z/identity words only) evolve by exact per-basis-state
// phases; anything else falls back to a dense Hermitian exponential.
void evolve(StateVector& state, const SpinHamiltonian& h, double t);

// Dense exp(+i H t) as a matrix, always via eigendecomposition.
Eigen::MatrixXcd evolution_matrix(const SpinHamiltonian& h, double t);

}  // namespace daqc
