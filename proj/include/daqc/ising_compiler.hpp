#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "daqc/hamiltonian.hpp"
#include "daqc/schedule.hpp"

namespace daqc {

// 1-based pair indexing: (n, m) with n < m maps to alpha = N(n-1) - n(n+1)/2 + m,
// enumerating (1,2), (1,3), ..., (1,N), (2,3), ...
int pair_index(int n, int m, int n_qubits);
std::pair<int, int> pair_unindex(int alpha, int n_qubits);
int pair_count(int n_qubits);

// K x K matrix of conjugation signs: entry (alpha, beta) is the sign the
// X-sandwich of pair alpha imprints on the ZZ coupling of pair beta,
// (-1)^(number of shared sites).
Eigen::MatrixXd sign_matrix(int n_qubits);

// Closed-form spectrum of sign_matrix(N): lambda1 = N(N-9)/2 + 8 on the
// all-ones vector (multiplicity 1), lambda2 = 2(4-N) (multiplicity N-1),
// lambda3 = 4 (multiplicity K-N).
struct SignSpectrum {
    double lambda1, lambda2, lambda3;
};
SignSpectrum sign_spectrum(int n_qubits);

struct BlockTimes {
    Eigen::VectorXd times;  // per pair-sandwich generator, may be negative
    double condition_number = 0.0;
    // Max-norm residual of the linear solve, scaled by max(1, |rhs|_inf) so
    // strong resource decay (huge scaled couplings) does not mask exactness.
    double residual = 0.0;
};

// Solves sign_matrix(N) * t = t_f * g ./ gbar for the all-to-all generator
// set. Both coupling vectors are pair-indexed (alpha order, 0-based storage).
BlockTimes solve_block_times(const Eigen::VectorXd& target_g,
                             const Eigen::VectorXd& resource_g, double t_f,
                             int n_qubits);

struct Remediation {
    Eigen::VectorXd times;  // all >= 0
    double bare_time = 0.0;
    std::string strategy;  // "none" | "eigenvector-shift" | "period-wrap"
};

// Rewrites negative block times without changing the realized unitary.
// Strategies in order: all-ones eigenvector shift (needs lambda1 < 0, i.e.
// N in {3,5,6}, and allow_shift), then period wrapping (homogeneous resource
// coupling g, exact since the ZZ spectrum is integer multiples of g). When
// neither applies the caller must fall back to sign-inverted blocks, which
// this routine signals by throwing NoRemediation.
Remediation remediate_negative_times(const Eigen::VectorXd& times, int n_qubits,
                                     std::optional<double> homogeneous_g,
                                     bool allow_shift);

struct CompileReport {
    std::vector<std::string> generator_labels;  // per entry of times
    Eigen::VectorXd times;                      // raw linear-solve solution
    Eigen::VectorXd shifted_times;              // post-remediation durations
    double bare_time = 0.0;
    double condition_number = 0.0;
    bool condition_warning = false;  // condition number above 1e8
    double residual = 0.0;
    std::string remediation = "none";  // plus "sign-inversion" when flagged
    bool used_fallback = false;        // augmented generator set in play
    std::size_t analog_blocks = 0;
    double total_analog_time = 0.0;

    nlohmann::ordered_json to_json() const;
};

struct IsingOptions {
    // Permit the N=4 all-to-all augmentation (single-site X sandwiches plus
    // minimum-norm least squares) instead of failing on the singular set.
    bool allow_fallback = false;
};

struct CompiledSchedule {
    Schedule schedule;
    CompileReport report;
};

// Compiles exp(+i t_f H_target) out of X-sandwiched evolutions of the
// resource Hamiltonian. Both inputs must be pure two-body ZZ sums on the
// same register.
CompiledSchedule compile_ising(const SpinHamiltonian& target,
                               const SpinHamiltonian& resource, double t_f,
                               const IsingOptions& opts = {});

// Controlled-phase gadget: CZ(phi) ~ diag(1,1,1,e^{-i 2 phi}) on (qubit_a,
// qubit_b) up to global phase, as a z-rotation layer plus a compiled ZZ
// evolution of the resource. Site labels are 1-based like the pair indexing.
CompiledSchedule cz_gadget(const SpinHamiltonian& resource, int qubit_a,
                           int qubit_b, double phi, double t_f,
                           const IsingOptions& opts = {});

}  // namespace daqc
