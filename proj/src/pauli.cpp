#include "daqc/pauli.hpp"

#include <bit>

namespace daqc {

namespace {

// multiply_table[a][b] -> (axis, phase index) with phases 1, i, -1, -i
// indexed 0..3. Derived from XY = iZ, YZ = iX, ZX = iY and cyclic partners.
struct ProductEntry {
    Axis axis;
    int phase_pow;  // power of i
};

constexpr ProductEntry kProduct[4][4] = {
    // I            X             Y             Z
    {{Axis::I, 0}, {Axis::X, 0}, {Axis::Y, 0}, {Axis::Z, 0}},  // I
    {{Axis::X, 0}, {Axis::I, 0}, {Axis::Z, 1}, {Axis::Y, 3}},  // X
    {{Axis::Y, 0}, {Axis::Z, 3}, {Axis::I, 0}, {Axis::X, 1}},  // Y
    {{Axis::Z, 0}, {Axis::Y, 1}, {Axis::X, 3}, {Axis::I, 0}},  // Z
};

constexpr cplx kPhases[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

}  // namespace

char axis_char(Axis a) {
    switch (a) {
        case Axis::I: return 'I';
        case Axis::X: return 'X';
        case Axis::Y: return 'Y';
        case Axis::Z: return 'Z';
    }
    throw InvalidArgument("axis_char: corrupt axis value");
}

Axis axis_from_char(char c) {
    switch (c) {
        case 'I': case 'i': return Axis::I;
        case 'X': case 'x': return Axis::X;
        case 'Y': case 'y': return Axis::Y;
        case 'Z': case 'z': return Axis::Z;
    }
    throw InvalidArgument(std::string("axis_from_char: unknown axis '") + c + "'");
}

Eigen::Matrix2cd pauli_matrix(Axis a) {
    Eigen::Matrix2cd m;
    const cplx i(0.0, 1.0);
    switch (a) {
        case Axis::I: m << 1, 0, 0, 1; break;
        case Axis::X: m << 0, 1, 1, 0; break;
        case Axis::Y: m << 0, -i, i, 0; break;
        case Axis::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

PauliWord::PauliWord(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw DimensionError("PauliWord: register size " + std::to_string(n_qubits) +
                             " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    axes_.assign(static_cast<std::size_t>(n_qubits), Axis::I);
}

PauliWord PauliWord::from_string(std::string_view s) {
    PauliWord w(static_cast<int>(s.size()));
    for (std::size_t q = 0; q < s.size(); ++q) {
        w.axes_[q] = axis_from_char(s[q]);
    }
    return w;
}

Axis PauliWord::axis(int site) const {
    if (site < 0 || site >= n_qubits()) {
        throw DimensionError("PauliWord::axis: site out of range");
    }
    return axes_[static_cast<std::size_t>(site)];
}

void PauliWord::set_axis(int site, Axis a) {
    if (site < 0 || site >= n_qubits()) {
        throw DimensionError("PauliWord::set_axis: site out of range");
    }
    axes_[static_cast<std::size_t>(site)] = a;
}

bool PauliWord::is_identity() const {
    for (Axis a : axes_) {
        if (a != Axis::I) return false;
    }
    return true;
}

int PauliWord::weight() const {
    int w = 0;
    for (Axis a : axes_) {
        if (a != Axis::I) ++w;
    }
    return w;
}

bool PauliWord::is_z_diagonal() const {
    for (Axis a : axes_) {
        if (a == Axis::X || a == Axis::Y) return false;
    }
    return true;
}

std::string PauliWord::str() const {
    std::string s;
    s.reserve(axes_.size());
    for (Axis a : axes_) s.push_back(axis_char(a));
    return s;
}

Eigen::MatrixXcd PauliWord::matrix() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    // Build from the last site inward so site 0 lands as the outermost
    // (most significant) tensor factor.
    for (auto it = axes_.rbegin(); it != axes_.rend(); ++it) {
        const Eigen::Matrix2cd p = pauli_matrix(*it);
        Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
        next.topLeftCorner(m.rows(), m.cols()) = p(0, 0) * m;
        next.topRightCorner(m.rows(), m.cols()) = p(0, 1) * m;
        next.bottomLeftCorner(m.rows(), m.cols()) = p(1, 0) * m;
        next.bottomRightCorner(m.rows(), m.cols()) = p(1, 1) * m;
        m.swap(next);
    }
    return m;
}

Eigen::VectorXd PauliWord::z_diagonal() const {
    if (!is_z_diagonal()) {
        throw InvalidArgument("PauliWord::z_diagonal: word contains X or Y");
    }
    const int n = n_qubits();
    const std::int64_t dim = std::int64_t{1} << n;
    Eigen::VectorXd d(dim);
    // Bit n-1-q of the basis index holds qubit q (leftmost factor first).
    std::uint64_t mask = 0;
    for (int q = 0; q < n; ++q) {
        if (axes_[static_cast<std::size_t>(q)] == Axis::Z) {
            mask |= std::uint64_t{1} << (n - 1 - q);
        }
    }
    for (std::int64_t b = 0; b < dim; ++b) {
        const int parity = std::popcount(static_cast<std::uint64_t>(b) & mask) & 1;
        d[b] = parity ? -1.0 : 1.0;
    }
    return d;
}

bool PauliWord::commutes_with(const PauliWord& other) const {
    if (n_qubits() != other.n_qubits()) {
        throw DimensionError("PauliWord::commutes_with: size mismatch");
    }
    int anti = 0;
    for (std::size_t q = 0; q < axes_.size(); ++q) {
        const Axis a = axes_[q];
        const Axis b = other.axes_[q];
        if (a != Axis::I && b != Axis::I && a != b) ++anti;
    }
    return (anti % 2) == 0;
}

WordProduct multiply(const PauliWord& lhs, const PauliWord& rhs) {
    if (lhs.n_qubits() != rhs.n_qubits()) {
        throw DimensionError("multiply: word size mismatch");
    }
    PauliWord out(lhs.n_qubits());
    int phase_pow = 0;
    for (int q = 0; q < lhs.n_qubits(); ++q) {
        const ProductEntry e =
            kProduct[static_cast<int>(lhs.axis(q))][static_cast<int>(rhs.axis(q))];
        out.set_axis(q, e.axis);
        phase_pow += e.phase_pow;
    }
    return {out, kPhases[phase_pow % 4]};
}

}  // namespace daqc
