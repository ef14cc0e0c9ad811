#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "daqc/dense.hpp"
#include "daqc/errors.hpp"
#include "daqc/hamiltonian.hpp"
#include "daqc/pauli.hpp"
#include "daqc/propagator.hpp"
#include "daqc/rng.hpp"
#include "daqc/rotation.hpp"
#include "daqc/state.hpp"

using namespace daqc;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent exponential oracle: Pade scaling-and-squaring, a different
// algorithm from the library's eigendecomposition path.
Eigen::MatrixXcd exp_oracle(const Eigen::MatrixXcd& h, double t) {
    return (cd(0.0, 1.0) * t * h).exp();
}

Eigen::MatrixXcd random_hermitian(int dim, CounterRng& rng) {
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            m(r, c) = cd(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
    }
    return 0.5 * (m + m.adjoint()).eval();
}

SpinHamiltonian random_hamiltonian(int n, int n_terms, CounterRng& rng) {
    SpinHamiltonian h(n);
    const Axis axes[4] = {Axis::I, Axis::X, Axis::Y, Axis::Z};
    for (int i = 0; i < n_terms; ++i) {
        PauliWord w(n);
        bool nontrivial = false;
        for (int q = 0; q < n; ++q) {
            const Axis a = axes[static_cast<int>(rng.uniform(0.0, 4.0))];
            w.set_axis(q, a);
            nontrivial = nontrivial || a != Axis::I;
        }
        if (!nontrivial) { --i; continue; }
        h.add_term(rng.uniform(-1.0, 1.0), w);
    }
    return h;
}

}  // namespace

TEST_CASE("word matrices: hand-worked tensor products") {
    const cd I1(0.0, 1.0);

    auto zz = PauliWord::from_string("ZZ").matrix();
    Eigen::Vector4d want_diag(1.0, -1.0, -1.0, 1.0);
    CHECK(max_abs(zz - Eigen::MatrixXcd(want_diag.cast<cd>().asDiagonal())) == 0.0);

    auto ii = PauliWord::from_string("II").matrix();
    CHECK(max_abs(ii - Eigen::MatrixXcd::Identity(4, 4)) == 0.0);

    auto xy = PauliWord::from_string("XY").matrix();
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(4, 4);
    want(0, 3) = -I1;
    want(1, 2) = I1;
    want(2, 1) = -I1;
    want(3, 0) = I1;
    CHECK(max_abs(xy - want) == 0.0);
}

TEST_CASE("word product tracks phases") {
    auto p = multiply(PauliWord::from_string("X"), PauliWord::from_string("Y"));
    CHECK(p.word.str() == "Z");
    CHECK(p.phase == cd(0.0, 1.0));

    auto q = multiply(PauliWord::from_string("XY"), PauliWord::from_string("YZ"));
    CHECK(q.word.str() == "ZX");
    CHECK(q.phase == cd(-1.0, 0.0));

    // Property check against the dense realization on random words.
    CounterRng rng(11, 0, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform(0.0, 4.0));
        auto rand_word = [&] {
            PauliWord w(n);
            const Axis axes[4] = {Axis::I, Axis::X, Axis::Y, Axis::Z};
            for (int qb = 0; qb < n; ++qb) {
                w.set_axis(qb, axes[static_cast<int>(rng.uniform(0.0, 4.0))]);
            }
            return w;
        };
        const PauliWord a = rand_word();
        const PauliWord b = rand_word();
        const auto prod = multiply(a, b);
        CHECK(max_abs(a.matrix() * b.matrix() - prod.phase * prod.word.matrix()) < 1e-14);
        CHECK(a.commutes_with(b) ==
              (max_abs(a.matrix() * b.matrix() - b.matrix() * a.matrix()) < 1e-12));
    }
}

TEST_CASE("propagator basics") {
    const double g = 0.7;
    SpinHamiltonian h(2);
    h.add_term(g, PauliWord::from_string("ZZ"));

    SUBCASE("quarter period applied twice is -identity") {
        auto u = evolution_matrix(h, kPi / (2.0 * g));
        CHECK(max_abs(u * u + Eigen::MatrixXcd::Identity(4, 4)) < 1e-12);
    }
    SUBCASE("zero time is identity") {
        auto u = evolution_matrix(h, 0.0);
        CHECK(max_abs(u - Eigen::MatrixXcd::Identity(4, 4)) < 1e-14);
    }
    SUBCASE("unitarity") {
        auto u = evolution_matrix(h, 1.37);
        CHECK(max_abs(u.adjoint() * u - Eigen::MatrixXcd::Identity(4, 4)) < 1e-12);
    }
}

TEST_CASE("diagonal fast path equals independent dense exponential") {
    SpinHamiltonian h(3);
    h.add_term(1.0, PauliWord::from_string("ZZI"));
    h.add_term(1.0, PauliWord::from_string("ZIZ"));
    h.add_term(1.0, PauliWord::from_string("IZZ"));
    REQUIRE(h.is_z_diagonal());

    const double t = 0.83;
    const Eigen::MatrixXcd oracle = exp_oracle(h.matrix(), t);

    StateVector psi(3);
    CounterRng rng(5, 0, 0);
    for (int q = 0; q < 3; ++q) {
        psi.apply_single_qubit(q, expi_hermitian(random_hermitian(2, rng), 1.0));
    }
    StateVector via_fast = psi;
    evolve(via_fast, h, t);
    StateVector via_dense = psi;
    via_dense.apply_matrix(oracle);
    CHECK((via_fast.amplitudes() - via_dense.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(via_fast.norm() - 1.0) < 1e-12);
}

TEST_CASE("state register conventions") {
    // Leftmost character is qubit 0 and the most significant bit.
    auto psi = StateVector::from_spin_string("ddudd");
    CHECK(psi.n_qubits() == 5);
    CHECK(std::abs(psi.amplitudes()[0b11011] - 1.0) < 1e-15);

    CHECK_THROWS_AS(StateVector::from_spin_string("udx"), InvalidArgument);

    // Gate kernels against the dense embedding oracle.
    CounterRng rng(17, 0, 0);
    const int n = 3;
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXcd u1 = expi_hermitian(random_hermitian(2, rng), 1.0);
        const Eigen::MatrixXcd u2 = expi_hermitian(random_hermitian(4, rng), 1.0);
        const int q = static_cast<int>(rng.uniform(0.0, 3.0));
        StateVector a(n);
        for (int s = 0; s < n; ++s) {
            a.apply_single_qubit(s, expi_hermitian(random_hermitian(2, rng), 1.0));
        }
        StateVector b = a;

        a.apply_single_qubit(q, u1);
        Eigen::MatrixXcd embed = Eigen::MatrixXcd::Identity(1, 1);
        for (int s = 0; s < n; ++s) {
            embed = kron(embed, s == q ? u1 : Eigen::MatrixXcd::Identity(2, 2));
        }
        b.apply_matrix(embed);
        CHECK((a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff() < 1e-13);

        // Two-qubit gate on (0, 2): embed by conjugating with a swap of (1, 2).
        StateVector c = a, d = a;
        c.apply_two_qubit(0, 2, u2);
        Eigen::MatrixXcd swap12 = Eigen::MatrixXcd::Zero(8, 8);
        for (int b0 = 0; b0 < 2; ++b0)
            for (int b1 = 0; b1 < 2; ++b1)
                for (int b2 = 0; b2 < 2; ++b2)
                    swap12(b0 * 4 + b2 * 2 + b1, b0 * 4 + b1 * 2 + b2) = 1.0;
        const Eigen::MatrixXcd big =
            swap12 * kron(u2, Eigen::MatrixXcd::Identity(2, 2)) * swap12;
        d.apply_matrix(big);
        CHECK((c.amplitudes() - d.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("fidelity") {
    auto zero = StateVector::basis_state(1, 0);
    auto one = StateVector::basis_state(1, 1);
    CHECK(fidelity(zero, zero) == doctest::Approx(1.0).epsilon(1e-12));

    auto pp = StateVector::from_spin_string("uu");
    auto mm = StateVector::from_spin_string("dd");
    CHECK(fidelity(pp, mm) == doctest::Approx(0.0));

    StateVector plus(1);
    Eigen::Matrix2cd had;
    had << 1, 1, 1, -1;
    had /= std::sqrt(2.0);
    plus.apply_single_qubit(0, had);
    CHECK(fidelity(zero, plus) == doctest::Approx(0.5).epsilon(1e-12));

    // Global phase insensitivity and symmetry.
    StateVector phased = plus;
    phased.apply_matrix(std::polar(1.0, 1.234) * Eigen::MatrixXcd::Identity(2, 2));
    CHECK(fidelity(plus, phased) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(zero, plus) == doctest::Approx(fidelity(plus, zero)));
}

TEST_CASE("xz reflections") {
    SUBCASE("theta = pi/2 maps Z to X under conjugation") {
        auto layer = RotationLayer::xz_reflection({kPi / 2.0});
        const Eigen::Matrix2cd r = layer.gate(0);
        const Eigen::Matrix2cd z = pauli_matrix(Axis::Z);
        const Eigen::Matrix2cd x = pauli_matrix(Axis::X);
        CHECK(max_abs(r * z * r - x) < 1e-12);
    }
    SUBCASE("theta = 0 is a Z layer; squares to identity") {
        auto layer = RotationLayer::xz_reflection({0.0, 0.0});
        CHECK(max_abs(layer.gate(0) - pauli_matrix(Axis::Z)) < 1e-15);
        StateVector psi(2);
        CounterRng rng(3, 0, 0);
        psi.apply_single_qubit(0, expi_hermitian(random_hermitian(2, rng), 1.0));
        StateVector out = psi;
        layer.apply(out);
        layer.apply(out);
        CHECK((out.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff() < 1e-13);
    }
    SUBCASE("non-normalized axis is rejected") {
        CHECK_THROWS_AS(RotationLayer::reflection(
                            1, {{0, Eigen::Vector3d(0.5, 0.5, 0.5)}}),
                        InvalidArgument);
    }
}

TEST_CASE("hamiltonian conjugation matches dense oracle") {
    CounterRng rng(29, 0, 0);
    for (int trial = 0; trial < 8; ++trial) {
        SpinHamiltonian h = random_hamiltonian(3, 5, rng);

        SUBCASE("by a general reflection layer") {
            std::vector<std::optional<Eigen::Vector3d>> axes(3);
            for (int q = 0; q < 3; ++q) {
                Eigen::Vector3d v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                                  rng.uniform(-1.0, 1.0));
                axes[static_cast<std::size_t>(q)] = v.normalized();
            }
            SpinHamiltonian conj = conjugate_by_reflection_layer(h, axes);
            std::vector<std::pair<int, Eigen::Vector3d>> pairs;
            for (int q = 0; q < 3; ++q) pairs.emplace_back(q, *axes[static_cast<std::size_t>(q)]);
            const Eigen::MatrixXcd l = RotationLayer::reflection(3, pairs).matrix();
            CHECK(max_abs(conj.matrix() - l * h.matrix() * l) < 1e-12);
        }

        SUBCASE("by exp(i phi XX)") {
            const double phi = rng.uniform(-1.5, 1.5);
            SpinHamiltonian conj = conjugate_by_xx(h, 0, 2, phi);
            PauliWord xx(3);
            xx.set_axis(0, Axis::X);
            xx.set_axis(2, Axis::X);
            const Eigen::MatrixXcd u = expi_hermitian(xx.matrix(), phi);
            CHECK(max_abs(conj.matrix() - u * h.matrix() * u.adjoint()) < 1e-12);
        }
    }
}

TEST_CASE("hamiltonian json round trip") {
    SpinHamiltonian h(3);
    h.add_term(0.25, PauliWord::from_string("ZZI"));
    h.add_term(-1.5, PauliWord::from_string("XIY"));
    auto j = h.to_json();
    SpinHamiltonian back = SpinHamiltonian::from_json(j);
    CHECK(back.n_qubits() == 3);
    CHECK(back.max_coefficient_delta(h) == 0.0);
}

TEST_CASE("general propagator equals independent oracle") {
    CounterRng rng(41, 0, 0);
    SpinHamiltonian h = random_hamiltonian(3, 6, rng);
    const double t = 0.9;
    CHECK(max_abs(evolution_matrix(h, t) - exp_oracle(h.matrix(), t)) < 1e-12);
}

TEST_CASE("phase-aligned deviation quotients out a global phase") {
    CounterRng rng(57, 0, 0);
    SpinHamiltonian h = random_hamiltonian(3, 5, rng);
    Eigen::MatrixXcd u = evolution_matrix(h, 0.6);

    // Any pure phase between the operands must vanish under alignment.
    for (double theta : {0.0, 0.7, 2.9, -1.3}) {
        Eigen::MatrixXcd v = std::exp(cplx(0.0, theta)) * u;
        CHECK(phase_aligned_max_dev(v, u) < 1e-13);
        CHECK(phase_aligned_max_dev(u, v) < 1e-13);
    }

    // A genuine difference survives: CZ vs identity differ in one entry, and
    // no phase can absorb that.
    Eigen::MatrixXcd cz = Eigen::MatrixXcd::Identity(4, 4);
    cz(3, 3) = -1.0;
    CHECK(phase_aligned_max_dev(cz, Eigen::MatrixXcd::Identity(4, 4)) > 0.5);
}
