#include "daqc/rotation.hpp"

#include <algorithm>
#include <cmath>

#include "daqc/errors.hpp"

namespace daqc {

namespace {

Eigen::Matrix2cd bloch_reflection(const Eigen::Vector3d& axis) {
    if (std::abs(axis.norm() - 1.0) > 1e-12) {
        throw InvalidArgument("RotationLayer: reflection axis not unit length");
    }
    Eigen::Matrix2cd m;
    const cplx i(0.0, 1.0);
    m << axis.z(), axis.x() - i * axis.y(),
         axis.x() + i * axis.y(), -axis.z();
    return m;
}

}  // namespace

RotationLayer::RotationLayer(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw DimensionError("RotationLayer: register size out of range");
    }
    gates_.assign(static_cast<std::size_t>(n_qubits), Eigen::Matrix2cd::Identity());
}

RotationLayer RotationLayer::identity(int n_qubits) { return RotationLayer(n_qubits); }

RotationLayer RotationLayer::reflection(
    int n_qubits, const std::vector<std::pair<int, Eigen::Vector3d>>& axes) {
    RotationLayer layer(n_qubits);
    for (const auto& [q, axis] : axes) {
        layer.set_gate(q, bloch_reflection(axis));
    }
    return layer;
}

RotationLayer RotationLayer::xz_reflection(const std::vector<double>& thetas) {
    RotationLayer layer(static_cast<int>(thetas.size()));
    for (std::size_t q = 0; q < thetas.size(); ++q) {
        const double half = 0.5 * thetas[q];
        layer.set_gate(static_cast<int>(q),
                       bloch_reflection({std::sin(half), 0.0, std::cos(half)}));
    }
    return layer;
}

RotationLayer RotationLayer::x_on(int n_qubits, const std::vector<int>& qubits) {
    RotationLayer layer(n_qubits);
    for (int q : qubits) layer.set_gate(q, pauli_matrix(Axis::X));
    return layer;
}

RotationLayer RotationLayer::axis_rotation(int n_qubits, int qubit,
                                           const Eigen::Vector3d& axis, double angle) {
    RotationLayer layer(n_qubits);
    if (std::abs(axis.norm() - 1.0) > 1e-12) {
        throw InvalidArgument("RotationLayer::axis_rotation: axis not unit length");
    }
    const Eigen::Matrix2cd ns = bloch_reflection(axis);
    layer.set_gate(qubit, std::cos(angle) * Eigen::Matrix2cd::Identity() +
                              cplx(0.0, 1.0) * std::sin(angle) * ns);
    return layer;
}

const Eigen::Matrix2cd& RotationLayer::gate(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits()) {
        throw DimensionError("RotationLayer::gate: qubit out of range");
    }
    return gates_[static_cast<std::size_t>(qubit)];
}

void RotationLayer::set_gate(int qubit, const Eigen::Matrix2cd& u) {
    if (qubit < 0 || qubit >= n_qubits()) {
        throw DimensionError("RotationLayer::set_gate: qubit out of range");
    }
    if (!is_unitary(u, 1e-9)) {
        throw InvalidArgument("RotationLayer::set_gate: gate is not unitary");
    }
    gates_[static_cast<std::size_t>(qubit)] = u;
}

bool RotationLayer::is_identity(double tol) const {
    for (const auto& g : gates_) {
        if (max_abs(Eigen::MatrixXcd(g - Eigen::Matrix2cd::Identity())) > tol) return false;
    }
    return true;
}

void RotationLayer::apply(StateVector& psi) const {
    if (psi.n_qubits() != n_qubits()) {
        throw DimensionError("RotationLayer::apply: register mismatch");
    }
    for (int q = 0; q < n_qubits(); ++q) {
        const auto& g = gates_[static_cast<std::size_t>(q)];
        if (max_abs(Eigen::MatrixXcd(g - Eigen::Matrix2cd::Identity())) == 0.0) continue;
        psi.apply_single_qubit(q, g);
    }
}

Eigen::MatrixXcd RotationLayer::matrix() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (const auto& g : gates_) m = kron(m, g);
    return m;
}

RotationLayer RotationLayer::composed_after(const RotationLayer& first) const {
    if (first.n_qubits() != n_qubits()) {
        throw DimensionError("RotationLayer::composed_after: register mismatch");
    }
    RotationLayer out(n_qubits());
    for (int q = 0; q < n_qubits(); ++q) {
        out.gates_[static_cast<std::size_t>(q)] =
            gates_[static_cast<std::size_t>(q)] * first.gates_[static_cast<std::size_t>(q)];
    }
    out.nominal_width_ = std::max(nominal_width_, first.nominal_width_);
    return out;
}

Eigen::MatrixXcd RotationLayer::generator_matrix() const {
    const std::int64_t dim = std::int64_t{1} << n_qubits();
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
    for (int q = 0; q < n_qubits(); ++q) {
        const Eigen::Matrix2cd gq = unitary_generator(gates_[static_cast<std::size_t>(q)]);
        if (max_abs(gq) == 0.0) continue;
        Eigen::MatrixXcd embedded = Eigen::MatrixXcd::Identity(1, 1);
        for (int p = 0; p < n_qubits(); ++p) {
            embedded = kron(embedded, p == q ? Eigen::MatrixXcd(gq)
                                             : Eigen::MatrixXcd(Eigen::Matrix2cd::Identity()));
        }
        g += embedded;
    }
    return g;
}

std::vector<AxisAngle> RotationLayer::axis_angles() const {
    std::vector<AxisAngle> out;
    out.reserve(gates_.size());
    for (const auto& g : gates_) out.push_back(axis_angle_decompose(g));
    return out;
}

}  // namespace daqc
