#include "daqc/xz_compiler.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "daqc/errors.hpp"
#include "daqc/rotation.hpp"

namespace daqc {

namespace {

constexpr double kConditionLimit = 1e8;
constexpr double kResidualTol = 1e-10;

// Channel row index with the first axis on the lower site.
int channel_row(Axis lower, Axis upper) {
    const int a = (lower == Axis::X) ? 0 : 1;
    const int b = (upper == Axis::X) ? 0 : 1;
    return 2 * a + b;  // XX, XZ, ZX, ZZ
}

double condition_4x4(const Eigen::Matrix4d& m) {
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(m);
    const auto& s = svd.singularValues();
    return s(3) > 0.0 ? s(0) / s(3) : std::numeric_limits<double>::infinity();
}

Eigen::Matrix4d pair_matrix(const AngleSet& angles, int j, int k) {
    Eigen::Matrix4d m;
    for (int s = 1; s <= 4; ++s) {
        const double sj = std::sin(angles.theta(j, s));
        const double cj = std::cos(angles.theta(j, s));
        const double sk = std::sin(angles.theta(k, s));
        const double ck = std::cos(angles.theta(k, s));
        m(0, s - 1) = sj * sk;
        m(1, s - 1) = sj * ck;
        m(2, s - 1) = cj * sk;
        m(3, s - 1) = ck * cj;
    }
    return m;
}

// Per-pair channel coefficients of the target, keyed by 0-based (low, high).
std::map<std::pair<int, int>, Eigen::Vector4d> channel_table(const SpinHamiltonian& h) {
    std::map<std::pair<int, int>, Eigen::Vector4d> table;
    for (const auto& [word, coeff] : h.terms()) {
        if (coeff == 0.0) continue;
        int lo = -1, hi = -1;
        for (int q = 0; q < word.n_qubits(); ++q) {
            const Axis a = word.axis(q);
            if (a == Axis::I) continue;
            if (a == Axis::Y) {
                throw InvalidArgument("compile_xz: target carries a Y axis; only X/Z "
                                      "two-site channels are representable");
            }
            if (lo < 0) {
                lo = q;
            } else if (hi < 0) {
                hi = q;
            } else {
                throw InvalidArgument("compile_xz: target term acts on more than two sites");
            }
        }
        if (hi < 0) {
            throw InvalidArgument("compile_xz: target terms must couple exactly two sites");
        }
        auto [it, inserted] = table.try_emplace({lo, hi}, Eigen::Vector4d::Zero());
        it->second(channel_row(word.axis(lo), word.axis(hi))) += coeff;
    }
    return table;
}

// Bloch axes of the reflection layer for one set: sin(theta/2) X + cos(theta/2) Z.
std::vector<std::optional<Eigen::Vector3d>> reflection_axes(const AngleSet& angles, int s) {
    std::vector<std::optional<Eigen::Vector3d>> axes;
    axes.reserve(static_cast<std::size_t>(angles.n_qubits()));
    for (int w = 1; w <= angles.n_qubits(); ++w) {
        const double half = angles.theta(w, s) / 2.0;
        axes.emplace_back(Eigen::Vector3d(std::sin(half), 0.0, std::cos(half)));
    }
    return axes;
}

}  // namespace

AngleSet::AngleSet(int n_qubits, double fill) {
    if (n_qubits < 2) {
        throw InvalidArgument("AngleSet: need at least 2 qubits");
    }
    theta_ = Eigen::MatrixXd::Constant(n_qubits, 4, fill);
}

AngleSet AngleSet::defaults(int n_qubits) {
    AngleSet out(n_qubits, 0.0);
    for (int w = 1; w <= n_qubits; ++w) {
        for (int s = 1; s <= 4; ++s) {
            out.theta_(w - 1, s - 1) =
                s * std::numbers::pi * w / (2.0 * (w + 1));
        }
    }
    return out;
}

double AngleSet::theta(int w, int s) const {
    if (w < 1 || w > n_qubits() || s < 1 || s > 4) {
        throw InvalidArgument("AngleSet::theta: qubit or set index out of range");
    }
    return theta_(w - 1, s - 1);
}

void AngleSet::set_theta(int w, int s, double value) {
    if (w < 1 || w > n_qubits() || s < 1 || s > 4) {
        throw InvalidArgument("AngleSet::set_theta: qubit or set index out of range");
    }
    theta_(w - 1, s - 1) = value;
}

std::vector<double> AngleSet::set_angles(int s) const {
    if (s < 1 || s > 4) {
        throw InvalidArgument("AngleSet::set_angles: set index out of range");
    }
    std::vector<double> out(static_cast<std::size_t>(n_qubits()));
    for (int w = 1; w <= n_qubits(); ++w) {
        out[static_cast<std::size_t>(w - 1)] = theta_(w - 1, s - 1);
    }
    return out;
}

PairSystem solve_pair_strengths(const AngleSet& angles, int j, int k,
                                const Eigen::Vector4d& target) {
    if (j < 1 || k < 1 || j > angles.n_qubits() || k > angles.n_qubits() || j == k) {
        throw InvalidArgument("solve_pair_strengths: need two distinct 1-based sites");
    }
    PairSystem out;
    out.matrix = pair_matrix(angles, std::min(j, k), std::max(j, k));
    out.rhs = target;
    out.condition_number = condition_4x4(out.matrix);
    if (!(out.condition_number < kConditionLimit)) {
        throw SingularPairSystem("pair (" + std::to_string(j) + ", " + std::to_string(k) +
                                 "): reflection angles leave the channel system "
                                 "singular (condition " +
                                 std::to_string(out.condition_number) + ")");
    }
    out.solution = out.matrix.partialPivLu().solve(target);
    const double scale = std::max(target.cwiseAbs().maxCoeff(), 1.0);
    out.residual = (out.matrix * out.solution - target).cwiseAbs().maxCoeff() / scale;
    if (out.residual > kResidualTol) {
        throw SingularPairSystem("pair (" + std::to_string(j) + ", " + std::to_string(k) +
                                 "): channel solve residual " + std::to_string(out.residual) +
                                 " exceeds tolerance");
    }
    return out;
}

nlohmann::ordered_json XZCompileReport::to_json() const {
    nlohmann::ordered_json j;
    j["delegated_pure_zz"] = delegated_pure_zz;
    j["n_trotter"] = n_trotter;
    j["symmetrized"] = symmetrized;
    j["analog_blocks_per_step"] = analog_blocks_per_step;
    j["max_pair_condition"] = max_pair_condition;
    j["reconstruction_dev"] = reconstruction_dev;
    j["total_analog_time"] = total_analog_time;
    return j;
}

CompiledXZ compile_xz(const SpinHamiltonian& target, const SpinHamiltonian& resource,
                      double t_f, const XZOptions& opts) {
    const int n = target.n_qubits();
    if (n != resource.n_qubits()) {
        throw DimensionError("compile_xz: target and resource register sizes differ");
    }
    if (opts.n_trotter < 1) {
        throw InvalidArgument("compile_xz: need at least one Trotter step");
    }
    if (!std::isfinite(t_f)) {
        throw InvalidArgument("compile_xz: evolution time must be finite");
    }

    XZCompileReport report;
    report.n_trotter = opts.n_trotter;
    report.symmetrized = opts.symmetrized;

    // A commuting target needs no Trotterization at all.
    if (target.is_zz_two_body()) {
        CompiledSchedule zz = compile_ising(target, resource, t_f, opts.ising);
        report.delegated_pure_zz = true;
        report.analog_blocks_per_step = zz.schedule.analog_count_per_repeat();
        report.total_analog_time = zz.schedule.total_analog_time();
        return {std::move(zz.schedule), std::move(report)};
    }

    const AngleSet angles = opts.angles ? *opts.angles : AngleSet::defaults(n);
    if (angles.n_qubits() != n) {
        throw InvalidArgument("compile_xz: angle set sized for " +
                              std::to_string(angles.n_qubits()) + " qubits, register has " +
                              std::to_string(n));
    }

    // Validate conditioning over the whole register before solving anything,
    // so a bad override fails fast rather than on the first affected pair.
    for (int j = 1; j <= n; ++j) {
        for (int k = j + 1; k <= n; ++k) {
            const double cond = condition_4x4(pair_matrix(angles, j, k));
            if (!(cond < kConditionLimit)) {
                throw SingularPairSystem("pair (" + std::to_string(j) + ", " +
                                         std::to_string(k) +
                                         "): reflection angles leave the channel system "
                                         "singular (condition " + std::to_string(cond) + ")");
            }
            report.max_pair_condition = std::max(report.max_pair_condition, cond);
        }
    }

    // Split the target into four per-set ZZ networks.
    std::array<SpinHamiltonian, 4> sub{SpinHamiltonian(n), SpinHamiltonian(n),
                                       SpinHamiltonian(n), SpinHamiltonian(n)};
    for (const auto& [pair, channels] : channel_table(target)) {
        PairSystem system =
            solve_pair_strengths(angles, pair.first + 1, pair.second + 1, channels);
        for (int s = 0; s < 4; ++s) {
            if (system.solution(s) == 0.0) continue;
            PauliWord zz(n);
            zz.set_axis(pair.first, Axis::Z);
            zz.set_axis(pair.second, Axis::Z);
            sub[static_cast<std::size_t>(s)].add_term(system.solution(s), zz);
        }
    }

    // Hamiltonian-level reconstruction: sum of the reflected sub-networks
    // must reproduce the target coefficient-by-coefficient.
    SpinHamiltonian rebuilt(n);
    for (int s = 1; s <= 4; ++s) {
        rebuilt += conjugate_by_reflection_layer(sub[static_cast<std::size_t>(s - 1)],
                                                 reflection_axes(angles, s));
    }
    report.reconstruction_dev = rebuilt.max_coefficient_delta(target);

    std::vector<int> sequence = {1, 2, 3, 4};
    double dt = t_f / opts.n_trotter;
    if (opts.symmetrized) {
        sequence = {1, 2, 3, 4, 4, 3, 2, 1};
        dt /= 2.0;
    }

    Schedule schedule(resource);
    for (int s : sequence) {
        RotationLayer reflect = RotationLayer::xz_reflection(angles.set_angles(s));
        CompiledSchedule piece =
            compile_ising(sub[static_cast<std::size_t>(s - 1)], resource, dt, opts.ising);
        schedule.add_layer(reflect);
        for (const auto& block : piece.schedule.blocks()) {
            if (const auto* a = std::get_if<AnalogBlock>(&block)) {
                schedule.add_analog(a->duration, a->sign);
            } else {
                schedule.add_layer(std::get<RotationLayer>(block));
            }
        }
        schedule.add_layer(reflect);
    }
    schedule.simplify();
    schedule.set_repeats(opts.n_trotter);

    report.analog_blocks_per_step = schedule.analog_count_per_repeat();
    report.total_analog_time = schedule.total_analog_time();
    return {std::move(schedule), std::move(report)};
}

}  // namespace daqc
