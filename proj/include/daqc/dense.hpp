#pragma once

#include <Eigen/Dense>

#include "daqc/pauli.hpp"

namespace daqc {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// exp(+i t H) for Hermitian H, via spectral decomposition.
Eigen::MatrixXcd expi_hermitian(const Eigen::MatrixXcd& h, double t);

// Largest singular value.
double spectral_norm(const Eigen::MatrixXcd& m);

double max_abs(const Eigen::MatrixXcd& m);

bool is_unitary(const Eigen::MatrixXcd& u, double tol = 1e-10);

bool is_hermitian(const Eigen::MatrixXcd& h, double tol = 1e-10);

// Minimum over a global phase of the entrywise deviation between a and b:
// max_abs(a - e^{i phi} b) with phi chosen optimally (Frobenius sense).
double phase_aligned_max_dev(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Decomposition U = e^{i delta} * exp(i angle * (axis . sigma)) of a 2x2
// unitary; angle in [0, pi], axis unit length (defaults to +Z when the
// rotation part is the identity).
struct AxisAngle {
    Eigen::Vector3d axis;
    double angle;
    double phase;  // delta
};
AxisAngle axis_angle_decompose(const Eigen::Matrix2cd& u);

// Hermitian G with U = exp(+i G), using the axis-angle branch above
// (G = delta * I + angle * axis.sigma). Throws GeneratorUndefined when u is
// not unitary.
Eigen::Matrix2cd unitary_generator(const Eigen::Matrix2cd& u);

}  // namespace daqc
