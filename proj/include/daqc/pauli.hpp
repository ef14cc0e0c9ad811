#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "daqc/errors.hpp"

namespace daqc {

using cplx = std::complex<double>;

// Largest register size the dense code paths accept. 2^12 x 2^12 complex
// matrices are the practical ceiling for exact simulation here.
inline constexpr int kMaxQubits = 12;

enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_char(Axis a);
Axis axis_from_char(char c);

// Single-qubit Pauli matrix (2x2) for the given axis.
Eigen::Matrix2cd pauli_matrix(Axis a);

// A tensor product of single-qubit Pauli operators. Site 0 is the leftmost
// (most significant) tensor factor, so the basis index of a computational
// state reads the same way as its ket label.
class PauliWord {
  public:
    PauliWord() = default;
    explicit PauliWord(int n_qubits);

    // Parses strings like "IZXY"; one character per qubit, leftmost first.
    static PauliWord from_string(std::string_view s);

    int n_qubits() const { return static_cast<int>(axes_.size()); }
    Axis axis(int site) const;
    void set_axis(int site, Axis a);

    bool is_identity() const;
    int weight() const;  // number of non-identity sites

    // True when every site is I or Z (the word is diagonal in the
    // computational basis).
    bool is_z_diagonal() const;

    std::string str() const;

    // Dense 2^n x 2^n matrix. Throws DimensionError beyond kMaxQubits.
    Eigen::MatrixXcd matrix() const;

    // Diagonal of the word's matrix when is_z_diagonal(); each entry is +-1.
    Eigen::VectorXd z_diagonal() const;

    bool commutes_with(const PauliWord& other) const;

    auto operator<=>(const PauliWord&) const = default;

  private:
    std::vector<Axis> axes_;
};

// Product of two words: lhs * rhs = phase * word, with phase in {1,-1,i,-i}.
struct WordProduct {
    PauliWord word;
    cplx phase;
};
WordProduct multiply(const PauliWord& lhs, const PauliWord& rhs);

}  // namespace daqc
