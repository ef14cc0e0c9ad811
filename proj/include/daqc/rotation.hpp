#pragma once

#include <vector>

#include <Eigen/Dense>

#include "daqc/dense.hpp"
#include "daqc/state.hpp"

namespace daqc {

// One layer of simultaneous single-qubit gates. Gates default to identity,
// so a layer may act on any subset of the register.
class RotationLayer {
  public:
    RotationLayer() = default;
    explicit RotationLayer(int n_qubits);

    static RotationLayer identity(int n_qubits);

    // Reflection axis . sigma on the listed qubits (unit Bloch vectors).
    static RotationLayer reflection(int n_qubits,
                                    const std::vector<std::pair<int, Eigen::Vector3d>>& axes);

    // The X/Z-plane reflection cos(theta/2) Z + sin(theta/2) X on every
    // qubit; conjugation sends Z -> cos(theta) Z + sin(theta) X.
    static RotationLayer xz_reflection(const std::vector<double>& thetas);

    // sigma_x on exactly the listed qubits.
    static RotationLayer x_on(int n_qubits, const std::vector<int>& qubits);

    // exp(i angle * axis.sigma) on one qubit (identity elsewhere).
    static RotationLayer axis_rotation(int n_qubits, int qubit,
                                       const Eigen::Vector3d& axis, double angle);

    int n_qubits() const { return static_cast<int>(gates_.size()); }

    const Eigen::Matrix2cd& gate(int qubit) const;
    void set_gate(int qubit, const Eigen::Matrix2cd& u);

    bool is_identity(double tol = 1e-12) const;

    void apply(StateVector& psi) const;

    // Dense 2^n x 2^n matrix (small registers only).
    Eigen::MatrixXcd matrix() const;

    // Layer equal to applying `first`, then this layer.
    RotationLayer composed_after(const RotationLayer& first) const;

    // Hermitian generator of the whole layer: sum over qubits of the
    // embedded single-qubit generators, so exp(+i G) reproduces the layer up
    // to the recorded scalar phases. Dense matrix of size 2^n.
    Eigen::MatrixXcd generator_matrix() const;

    // Axis-angle view of every gate (used by the schedule serialization;
    // scalar phases are dropped there).
    std::vector<AxisAngle> axis_angles() const;

    // Nominal pulse width in time units; 0 means "use the executor's
    // default". Metadata only, recorded in serialized schedules.
    double nominal_width() const { return nominal_width_; }
    void set_nominal_width(double w) { nominal_width_ = w; }

  private:
    std::vector<Eigen::Matrix2cd> gates_;
    double nominal_width_ = 0.0;
};

}  // namespace daqc
