#include "daqc/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "daqc/errors.hpp"

namespace daqc {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Eigen::MatrixXcd expi_hermitian(const Eigen::MatrixXcd& h, double t) {
    if (h.rows() != h.cols()) {
        throw DimensionError("expi_hermitian: matrix not square");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) {
        throw Error("expi_hermitian: eigendecomposition failed");
    }
    const Eigen::VectorXd& lam = es.eigenvalues();
    Eigen::VectorXcd phases(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
        phases[k] = std::polar(1.0, lam[k] * t);
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double spectral_norm(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()[0];
}

double max_abs(const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().maxCoeff();
}

bool is_unitary(const Eigen::MatrixXcd& u, double tol) {
    if (u.rows() != u.cols()) return false;
    const Eigen::MatrixXcd delta =
        u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return max_abs(delta) <= tol;
}

bool is_hermitian(const Eigen::MatrixXcd& h, double tol) {
    if (h.rows() != h.cols()) return false;
    return max_abs(Eigen::MatrixXcd(h - h.adjoint())) <= tol;
}

double phase_aligned_max_dev(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("phase_aligned_max_dev: shape mismatch");
    }
    const cplx overlap = (a.adjoint() * b).trace();
    if (std::abs(overlap) < 1e-300) {
        return max_abs(Eigen::MatrixXcd(a - b));
    }
    // ||a - c b||_F^2 = ||a||^2 + ||b||^2 - 2 Re(c tr(a^dag b)) over |c| = 1
    // is minimized by c along the conjugate of the overlap.
    const cplx phase = std::conj(overlap) / std::abs(overlap);
    return max_abs(Eigen::MatrixXcd(a - phase * b));
}

AxisAngle axis_angle_decompose(const Eigen::Matrix2cd& u) {
    if (!is_unitary(u, 1e-9)) {
        throw GeneratorUndefined("axis_angle_decompose: matrix is not unitary");
    }
    const cplx det = u.determinant();
    double delta = 0.5 * std::arg(det);
    Eigen::Matrix2cd su = std::polar(1.0, -delta) * u;
    // su = cos(angle) I + i sin(angle) (axis . sigma); tr(su)/2 = cos(angle)
    // is real for SU(2) up to roundoff.
    double c = 0.5 * su.trace().real();
    c = std::clamp(c, -1.0, 1.0);
    // Fold su = -I into the scalar phase so that angle stays in [0, pi).
    const Eigen::Matrix2cd vec = (su - c * Eigen::Matrix2cd::Identity()) / cplx(0.0, 1.0);
    // vec = sin(angle) (axis . sigma) is Hermitian traceless.
    const double sz = vec(0, 0).real();
    const double sx = vec(0, 1).real();
    const double sy = -vec(0, 1).imag();
    const double s = std::sqrt(sx * sx + sy * sy + sz * sz);
    AxisAngle out;
    if (s < 1e-12) {
        out.axis = Eigen::Vector3d(0.0, 0.0, 1.0);
        out.angle = 0.0;
        if (c < 0.0) {
            // su == -I: represent as pure phase delta + pi.
            delta += std::numbers::pi;
        }
    } else {
        out.axis = Eigen::Vector3d(sx / s, sy / s, sz / s);
        out.angle = std::atan2(s, c);
    }
    out.phase = delta;
    return out;
}

Eigen::Matrix2cd unitary_generator(const Eigen::Matrix2cd& u) {
    const AxisAngle aa = axis_angle_decompose(u);
    Eigen::Matrix2cd n_sigma;
    const cplx i(0.0, 1.0);
    n_sigma << aa.axis.z(), aa.axis.x() - i * aa.axis.y(),
               aa.axis.x() + i * aa.axis.y(), -aa.axis.z();
    return aa.phase * Eigen::Matrix2cd::Identity() + aa.angle * n_sigma;
}

}  // namespace daqc
