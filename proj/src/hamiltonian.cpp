#include "daqc/hamiltonian.hpp"

#include <cmath>

namespace daqc {

SpinHamiltonian::SpinHamiltonian(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw DimensionError("SpinHamiltonian: register size " +
                             std::to_string(n_qubits) + " outside [1, " +
                             std::to_string(kMaxQubits) + "]");
    }
}

void SpinHamiltonian::add_term(double coeff, const PauliWord& word) {
    if (n_qubits_ == 0) {
        throw InvalidArgument("SpinHamiltonian::add_term: register size not set");
    }
    if (word.n_qubits() != n_qubits_) {
        throw DimensionError("SpinHamiltonian::add_term: word size mismatch");
    }
    auto [it, inserted] = terms_.try_emplace(word, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    } else if (coeff == 0.0) {
        terms_.erase(it);
    }
}

void SpinHamiltonian::add_term(double coeff, std::string_view word) {
    add_term(coeff, PauliWord::from_string(word));
}

double SpinHamiltonian::coefficient(const PauliWord& word) const {
    auto it = terms_.find(word);
    return it == terms_.end() ? 0.0 : it->second;
}

SpinHamiltonian& SpinHamiltonian::operator+=(const SpinHamiltonian& other) {
    if (other.n_qubits_ != n_qubits_) {
        throw DimensionError("SpinHamiltonian::operator+=: register mismatch");
    }
    for (const auto& [w, c] : other.terms_) add_term(c, w);
    return *this;
}

SpinHamiltonian& SpinHamiltonian::operator*=(double scale) {
    if (scale == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, c] : terms_) c *= scale;
    return *this;
}

void SpinHamiltonian::prune(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= tol) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

bool SpinHamiltonian::is_z_diagonal() const {
    for (const auto& [w, c] : terms_) {
        if (!w.is_z_diagonal()) return false;
    }
    return true;
}

bool SpinHamiltonian::is_zz_two_body() const {
    for (const auto& [w, c] : terms_) {
        if (!w.is_z_diagonal() || w.weight() != 2) return false;
    }
    return true;
}

double SpinHamiltonian::max_coefficient_delta(const SpinHamiltonian& other) const {
    double dev = 0.0;
    for (const auto& [w, c] : terms_) {
        dev = std::max(dev, std::abs(c - other.coefficient(w)));
    }
    for (const auto& [w, c] : other.terms_) {
        dev = std::max(dev, std::abs(c - coefficient(w)));
    }
    return dev;
}

Eigen::MatrixXcd SpinHamiltonian::matrix() const {
    const std::int64_t dim = std::int64_t{1} << n_qubits_;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [w, c] : terms_) m += c * w.matrix();
    return m;
}

Eigen::VectorXd SpinHamiltonian::diagonal_energies() const {
    if (!is_z_diagonal()) {
        throw InvalidArgument("SpinHamiltonian::diagonal_energies: operator has X/Y terms");
    }
    const std::int64_t dim = std::int64_t{1} << n_qubits_;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    for (const auto& [w, c] : terms_) e += c * w.z_diagonal();
    return e;
}

nlohmann::ordered_json SpinHamiltonian::to_json() const {
    nlohmann::ordered_json j;
    j["n_qubits"] = n_qubits_;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [w, c] : terms_) {
        terms.push_back({{"coeff", c}, {"word", w.str()}});
    }
    j["terms"] = std::move(terms);
    return j;
}

SpinHamiltonian SpinHamiltonian::from_json(const nlohmann::json& j) {
    if (!j.contains("n_qubits") || !j.contains("terms")) {
        throw ConfigError("hamiltonian json needs 'n_qubits' and 'terms'");
    }
    SpinHamiltonian h(j.at("n_qubits").get<int>());
    for (const auto& t : j.at("terms")) {
        const auto word = PauliWord::from_string(t.at("word").get<std::string>());
        h.add_term(t.at("coeff").get<double>(), word);
    }
    return h;
}

SpinHamiltonian conjugate_by_xx(const SpinHamiltonian& h, int site_a, int site_b,
                                double phi) {
    const int n = h.n_qubits();
    if (site_a == site_b || site_a < 0 || site_b < 0 || site_a >= n || site_b >= n) {
        throw InvalidArgument("conjugate_by_xx: bad site pair");
    }
    PauliWord gen(n);
    gen.set_axis(site_a, Axis::X);
    gen.set_axis(site_b, Axis::X);

    const double c2 = std::cos(2.0 * phi);
    const double s2 = std::sin(2.0 * phi);

    SpinHamiltonian out(n);
    for (const auto& [w, c] : h.terms()) {
        if (w.commutes_with(gen)) {
            out.add_term(c, w);
            continue;
        }
        // e^{+i phi A} P e^{-i phi A} = cos(2phi) P - i sin(2phi) P A for
        // {A, P} = 0; P A is a word with an imaginary unit phase, so the
        // result stays a real combination.
        out.add_term(c * c2, w);
        const auto [pw, phase] = multiply(w, gen);
        const cplx coeff = cplx(0.0, -1.0) * phase * c * s2;
        if (std::abs(coeff.imag()) > 1e-12 * std::abs(c)) {
            throw Error("conjugate_by_xx: non-real expansion coefficient");
        }
        out.add_term(coeff.real(), pw);
    }
    out.prune();
    return out;
}

SpinHamiltonian conjugate_by_reflection_layer(
    const SpinHamiltonian& h, const std::vector<std::optional<Eigen::Vector3d>>& axes) {
    const int n = h.n_qubits();
    if (static_cast<int>(axes.size()) != n) {
        throw DimensionError("conjugate_by_reflection_layer: axes size mismatch");
    }
    // Per-qubit 3x3 Householder images M_ab = 2 n_a n_b - delta_ab acting on
    // the (X, Y, Z) coefficient space.
    std::vector<std::optional<Eigen::Matrix3d>> maps(axes.size());
    for (std::size_t q = 0; q < axes.size(); ++q) {
        if (!axes[q]) continue;
        const Eigen::Vector3d v = *axes[q];
        if (std::abs(v.norm() - 1.0) > 1e-12) {
            throw InvalidArgument("conjugate_by_reflection_layer: axis not unit length");
        }
        maps[q] = 2.0 * v * v.transpose() - Eigen::Matrix3d::Identity();
    }

    SpinHamiltonian out(n);
    std::vector<std::pair<PauliWord, double>> frontier;
    for (const auto& [w, c] : h.terms()) {
        frontier.clear();
        frontier.emplace_back(w, c);
        for (int q = 0; q < n; ++q) {
            if (!maps[static_cast<std::size_t>(q)]) continue;
            const Eigen::Matrix3d& m = *maps[static_cast<std::size_t>(q)];
            std::vector<std::pair<PauliWord, double>> next;
            next.reserve(frontier.size() * 3);
            for (const auto& [fw, fc] : frontier) {
                const Axis a = fw.axis(q);
                if (a == Axis::I) {
                    next.emplace_back(fw, fc);
                    continue;
                }
                const int col = static_cast<int>(a) - 1;
                for (int row = 0; row < 3; ++row) {
                    const double weight = m(row, col);
                    if (weight == 0.0) continue;
                    PauliWord nw = fw;
                    nw.set_axis(q, static_cast<Axis>(row + 1));
                    next.emplace_back(nw, fc * weight);
                }
            }
            frontier.swap(next);
        }
        for (const auto& [fw, fc] : frontier) out.add_term(fc, fw);
    }
    out.prune();
    return out;
}

}  // namespace daqc
