#pragma once

#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "daqc/pauli.hpp"

namespace daqc {

// Real linear combination of Pauli words on a fixed register. Terms are kept
// merged and ordered, so iteration and serialization are deterministic.
class SpinHamiltonian {
  public:
    SpinHamiltonian() = default;
    explicit SpinHamiltonian(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    int term_count() const { return static_cast<int>(terms_.size()); }
    bool empty() const { return terms_.empty(); }

    // Adds coeff * word, merging with an existing term if present.
    void add_term(double coeff, const PauliWord& word);
    void add_term(double coeff, std::string_view word);

    double coefficient(const PauliWord& word) const;  // 0 when absent

    const std::map<PauliWord, double>& terms() const { return terms_; }

    SpinHamiltonian& operator+=(const SpinHamiltonian& other);
    SpinHamiltonian& operator*=(double scale);
    friend SpinHamiltonian operator*(double s, SpinHamiltonian h) { return h *= s; }

    // Removes terms with |coeff| <= tol.
    void prune(double tol = 1e-14);

    bool is_z_diagonal() const;
    // True when every term is exactly Z_j Z_k (two-site, Z only).
    bool is_zz_two_body() const;

    // Largest absolute coefficient difference against another operator over
    // the union of their terms.
    double max_coefficient_delta(const SpinHamiltonian& other) const;

    Eigen::MatrixXcd matrix() const;

    // For Z-diagonal operators: vector of diagonal energies E_b.
    Eigen::VectorXd diagonal_energies() const;

    // JSON form: {"n_qubits": n, "terms": [{"coeff": c, "word": "IZ..."}]}.
    nlohmann::ordered_json to_json() const;
    static SpinHamiltonian from_json(const nlohmann::json& j);

  private:
    int n_qubits_ = 0;
    std::map<PauliWord, double> terms_;
};

// Exact conjugation H -> e^{+i phi A} H e^{-i phi A} where A = X_a X_b.
// Anticommuting words split as cos(2 phi) P + sin-weighted P*A; commuting
// words pass through unchanged. This is the module-wide sign convention for
// all entangling-layer conjugations.
SpinHamiltonian conjugate_by_xx(const SpinHamiltonian& h, int site_a, int site_b,
                                double phi);

// Exact conjugation by a layer of single-qubit reflections. axes[q] is the
// unit Bloch vector (r,s,t) of the reflection r*X + s*Y + t*Z on qubit q;
// entries may be std::nullopt for qubits the layer does not touch. Each
// single-qubit Pauli maps through the Householder image
//   n.sigma  sigma_a  n.sigma = sum_b (2 n_a n_b - delta_ab) sigma_b,
// so a weight-k word expands into at most 3^k words.
SpinHamiltonian conjugate_by_reflection_layer(
    const SpinHamiltonian& h, const std::vector<std::optional<Eigen::Vector3d>>& axes);

}  // namespace daqc
