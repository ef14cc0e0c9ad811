#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

#include "daqc/pauli.hpp"

namespace daqc {

// Dense state vector over n qubits. Qubit 0 is the leftmost (most
// significant) factor, i.e. basis index bit n-1-q carries qubit q.
class StateVector {
  public:
    explicit StateVector(int n_qubits);

    static StateVector basis_state(int n_qubits, std::uint64_t index);

    // Spin-string constructor: 'u'/'0' is spin up |0>, 'd'/'1' is spin down
    // |1>, leftmost character is qubit 0.
    static StateVector from_spin_string(std::string_view spins);

    int n_qubits() const { return n_qubits_; }
    std::int64_t dim() const { return amp_.size(); }

    const Eigen::VectorXcd& amplitudes() const { return amp_; }
    Eigen::VectorXcd& amplitudes() { return amp_; }

    void apply_single_qubit(int qubit, const Eigen::Matrix2cd& u);
    void apply_two_qubit(int qubit_a, int qubit_b, const Eigen::Matrix4cd& u);

    // Multiplies amplitude b by exp(i * energies[b] * t).
    void apply_diagonal_phases(const Eigen::VectorXd& energies, double t);

    void apply_matrix(const Eigen::MatrixXcd& u);

    double norm() const { return amp_.norm(); }

  private:
    int n_qubits_;
    Eigen::VectorXcd amp_;
};

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

// Raw amplitude-array kernels shared by StateVector and the dense schedule
// unitary builder (which applies them to matrix columns).
namespace kernels {

void apply_single_qubit(Eigen::Ref<Eigen::VectorXcd> amp, int n_qubits, int qubit,
                        const Eigen::Matrix2cd& u);
void apply_two_qubit(Eigen::Ref<Eigen::VectorXcd> amp, int n_qubits, int qubit_a,
                     int qubit_b, const Eigen::Matrix4cd& u);
void apply_diagonal_phases(Eigen::Ref<Eigen::VectorXcd> amp,
                           const Eigen::VectorXd& energies, double t);

}  // namespace kernels

}  // namespace daqc
