#include "daqc/state.hpp"

#include <cmath>

#include "daqc/errors.hpp"

namespace daqc {

namespace kernels {

void apply_single_qubit(Eigen::Ref<Eigen::VectorXcd> amp, int n_qubits, int qubit,
                        const Eigen::Matrix2cd& u) {
    const std::int64_t stride = std::int64_t{1} << (n_qubits - 1 - qubit);
    const std::int64_t dim = amp.size();
    const cplx m00 = u(0, 0), m01 = u(0, 1), m10 = u(1, 0), m11 = u(1, 1);
    for (std::int64_t base = 0; base < dim; base += 2 * stride) {
        for (std::int64_t off = 0; off < stride; ++off) {
            const cplx a0 = amp[base + off];
            const cplx a1 = amp[base + off + stride];
            amp[base + off] = m00 * a0 + m01 * a1;
            amp[base + off + stride] = m10 * a0 + m11 * a1;
        }
    }
}

void apply_two_qubit(Eigen::Ref<Eigen::VectorXcd> amp, int n_qubits, int qubit_a,
                     int qubit_b, const Eigen::Matrix4cd& u) {
    // Row/column index within the 4x4 gate is (bit_a << 1) | bit_b.
    const std::int64_t sa = std::int64_t{1} << (n_qubits - 1 - qubit_a);
    const std::int64_t sb = std::int64_t{1} << (n_qubits - 1 - qubit_b);
    const std::int64_t dim = amp.size();
    for (std::int64_t b = 0; b < dim; ++b) {
        if ((b & sa) || (b & sb)) continue;  // visit each 4-group once, at 00
        const std::int64_t i00 = b;
        const std::int64_t i01 = b | sb;
        const std::int64_t i10 = b | sa;
        const std::int64_t i11 = b | sa | sb;
        const cplx a00 = amp[i00], a01 = amp[i01], a10 = amp[i10], a11 = amp[i11];
        amp[i00] = u(0, 0) * a00 + u(0, 1) * a01 + u(0, 2) * a10 + u(0, 3) * a11;
        amp[i01] = u(1, 0) * a00 + u(1, 1) * a01 + u(1, 2) * a10 + u(1, 3) * a11;
        amp[i10] = u(2, 0) * a00 + u(2, 1) * a01 + u(2, 2) * a10 + u(2, 3) * a11;
        amp[i11] = u(3, 0) * a00 + u(3, 1) * a01 + u(3, 2) * a10 + u(3, 3) * a11;
    }
}

void apply_diagonal_phases(Eigen::Ref<Eigen::VectorXcd> amp,
                           const Eigen::VectorXd& energies, double t) {
    for (std::int64_t b = 0; b < amp.size(); ++b) {
        amp[b] *= std::polar(1.0, energies[b] * t);
    }
}

}  // namespace kernels

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw DimensionError("StateVector: register size " + std::to_string(n_qubits) +
                             " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    amp_ = Eigen::VectorXcd::Zero(std::int64_t{1} << n_qubits);
    amp_[0] = 1.0;
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= static_cast<std::uint64_t>(s.dim())) {
        throw DimensionError("StateVector::basis_state: index out of range");
    }
    s.amp_[0] = 0.0;
    s.amp_[static_cast<std::int64_t>(index)] = 1.0;
    return s;
}

StateVector StateVector::from_spin_string(std::string_view spins) {
    std::uint64_t index = 0;
    for (char c : spins) {
        index <<= 1;
        switch (c) {
            case 'u': case 'U': case '0': break;
            case 'd': case 'D': case '1': index |= 1; break;
            default:
                throw InvalidArgument(std::string("StateVector::from_spin_string: bad character '") +
                                      c + "' (want u/d/0/1)");
        }
    }
    return basis_state(static_cast<int>(spins.size()), index);
}

void StateVector::apply_single_qubit(int qubit, const Eigen::Matrix2cd& u) {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw DimensionError("StateVector::apply_single_qubit: qubit out of range");
    }
    kernels::apply_single_qubit(amp_, n_qubits_, qubit, u);
}

void StateVector::apply_two_qubit(int qubit_a, int qubit_b, const Eigen::Matrix4cd& u) {
    if (qubit_a == qubit_b) {
        throw InvalidArgument("StateVector::apply_two_qubit: qubits must differ");
    }
    if (qubit_a < 0 || qubit_a >= n_qubits_ || qubit_b < 0 || qubit_b >= n_qubits_) {
        throw DimensionError("StateVector::apply_two_qubit: qubit out of range");
    }
    kernels::apply_two_qubit(amp_, n_qubits_, qubit_a, qubit_b, u);
}

void StateVector::apply_diagonal_phases(const Eigen::VectorXd& energies, double t) {
    if (energies.size() != amp_.size()) {
        throw DimensionError("StateVector::apply_diagonal_phases: size mismatch");
    }
    kernels::apply_diagonal_phases(amp_, energies, t);
}

void StateVector::apply_matrix(const Eigen::MatrixXcd& u) {
    if (u.rows() != amp_.size() || u.cols() != amp_.size()) {
        throw DimensionError("StateVector::apply_matrix: matrix size mismatch");
    }
    amp_ = u * amp_;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("fidelity: state dimensions differ");
    }
    const cplx overlap = a.amplitudes().dot(b.amplitudes());
    return std::norm(overlap);
}

}  // namespace daqc
