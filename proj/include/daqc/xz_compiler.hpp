#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "daqc/hamiltonian.hpp"
#include "daqc/ising_compiler.hpp"
#include "daqc/schedule.hpp"

namespace daqc {

// Reflection angles theta_w^(s) for qubit w = 1..N and set s = 1..4. The
// four rotated copies of a ZZ network reach every X/Z two-site channel as
// long as each pair's 4x4 coefficient system stays invertible.
class AngleSet {
  public:
    AngleSet() = default;
    AngleSet(int n_qubits, double fill);

    // theta_w^(s) = s pi w / (2 (w + 1)): distinct per qubit and set, with
    // spacing s pi / (2 (w^2 + 3w + 2)) between neighbours.
    static AngleSet defaults(int n_qubits);

    int n_qubits() const { return static_cast<int>(theta_.rows()); }

    // 1-based qubit w, set s in 1..4.
    double theta(int w, int s) const;
    void set_theta(int w, int s, double value);

    // Column of all qubits for one set, in register order.
    std::vector<double> set_angles(int s) const;

  private:
    Eigen::MatrixXd theta_;  // N x 4
};

// One pair's 4x4 channel system: rows ordered (XX, XZ, ZX, ZZ) with the
// first axis on the lower site, columns s = 1..4 holding the sin/cos
// products of the two reflection angles.
struct PairSystem {
    Eigen::Matrix4d matrix;
    Eigen::Vector4d rhs;
    Eigen::Vector4d solution;  // ZZ strength per set
    double condition_number = 0.0;
    double residual = 0.0;
};

// Solves for the four per-set ZZ strengths of pair (j, k), 1-based sites,
// given the target channel coefficients (g_XX, g_XZ, g_ZX, g_ZZ).
PairSystem solve_pair_strengths(const AngleSet& angles, int j, int k,
                                const Eigen::Vector4d& target);

struct XZOptions {
    int n_trotter = 1;
    // Palindromic set sequence 1..4,4..1 at half duration: second-order
    // stepping. Off by default, matching the plain product form.
    bool symmetrized = false;
    std::optional<AngleSet> angles;  // defaults when absent
    IsingOptions ising;
};

struct XZCompileReport {
    bool delegated_pure_zz = false;
    int n_trotter = 1;
    bool symmetrized = false;
    std::size_t analog_blocks_per_step = 0;
    double max_pair_condition = 0.0;
    // Coefficient-wise deviation of sum_s R H^(s) R from the target.
    double reconstruction_dev = 0.0;
    double total_analog_time = 0.0;

    nlohmann::ordered_json to_json() const;
};

struct CompiledXZ {
    Schedule schedule;
    XZCompileReport report;
};

// Compiles exp(+i t_f H_target) for a two-body X/Z-channel target as n_T
// Trotter steps, each a product of four reflection-sandwiched compiled ZZ
// evolutions of the resource. A target that is already pure ZZ bypasses the
// reflections entirely and compiles exactly for any n_T.
CompiledXZ compile_xz(const SpinHamiltonian& target, const SpinHamiltonian& resource,
                      double t_f, const XZOptions& opts = {});

}  // namespace daqc
