#include "daqc/propagator.hpp"

#include "daqc/dense.hpp"
#include "daqc/errors.hpp"

namespace daqc {

void evolve(StateVector& state, const SpinHamiltonian& h, double t) {
    if (h.n_qubits() != state.n_qubits()) {
        throw DimensionError("evolve: Hamiltonian and state register sizes differ");
    }
    if (h.is_z_diagonal()) {
        state.apply_diagonal_phases(h.diagonal_energies(), t);
        return;
    }
    state.apply_matrix(expi_hermitian(h.matrix(), t));
}

Eigen::MatrixXcd evolution_matrix(const SpinHamiltonian& h, double t) {
    return expi_hermitian(h.matrix(), t);
}

}  // namespace daqc
