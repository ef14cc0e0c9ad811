#include "daqc/ising_compiler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "daqc/errors.hpp"
#include "daqc/rotation.hpp"

namespace daqc {

int pair_count(int n_qubits) { return n_qubits * (n_qubits - 1) / 2; }

int pair_index(int n, int m, int n_qubits) {
    if (n < 1 || m <= n || m > n_qubits) {
        throw InvalidArgument("pair_index: need 1 <= n < m <= N, got (" +
                              std::to_string(n) + ", " + std::to_string(m) + ") with N=" +
                              std::to_string(n_qubits));
    }
    return n_qubits * (n - 1) - n * (n + 1) / 2 + m;
}

std::pair<int, int> pair_unindex(int alpha, int n_qubits) {
    if (alpha < 1 || alpha > pair_count(n_qubits)) {
        throw InvalidArgument("pair_unindex: index " + std::to_string(alpha) +
                              " outside 1.." + std::to_string(pair_count(n_qubits)));
    }
    // Invert by walking the row offsets; the closed-form floor expression is
    // off by one for some (alpha, N), so the exact scan is used instead.
    for (int n = 1; n < n_qubits; ++n) {
        const int offset = n_qubits * (n - 1) - n * (n + 1) / 2;
        const int m = alpha - offset;
        if (m > n && m <= n_qubits) return {n, m};
    }
    throw InvalidArgument("pair_unindex: no preimage");  // unreachable
}

Eigen::MatrixXd sign_matrix(int n_qubits) {
    if (n_qubits < 3) {
        throw InvalidArgument("sign_matrix: defined for N >= 3");
    }
    const int k = pair_count(n_qubits);
    Eigen::MatrixXd m(k, k);
    for (int a = 1; a <= k; ++a) {
        const auto [n1, m1] = pair_unindex(a, n_qubits);
        for (int b = 1; b <= k; ++b) {
            const auto [j, kk] = pair_unindex(b, n_qubits);
            const int shared = (n1 == j) + (n1 == kk) + (m1 == j) + (m1 == kk);
            m(a - 1, b - 1) = (shared % 2 == 0) ? 1.0 : -1.0;
        }
    }
    return m;
}

SignSpectrum sign_spectrum(int n_qubits) {
    if (n_qubits < 3) {
        throw InvalidArgument("sign_spectrum: defined for N >= 3");
    }
    const double nd = n_qubits;
    return {nd * (nd - 9.0) / 2.0 + 8.0, 2.0 * (4.0 - nd), 4.0};
}

namespace {

constexpr double kResidualRel = 1e-10;
constexpr double kConditionWarn = 1e8;

// Right-hand side t_f * g ./ gbar with the convention 0/0 = 0; a pair the
// resource cannot reach must carry no target coupling.
Eigen::VectorXd scaled_rhs(const Eigen::VectorXd& target_g,
                           const Eigen::VectorXd& resource_g, double t_f, int n) {
    const double gbar_scale = resource_g.cwiseAbs().maxCoeff();
    const double g_scale = target_g.cwiseAbs().maxCoeff();
    Eigen::VectorXd rhs(target_g.size());
    for (Eigen::Index b = 0; b < target_g.size(); ++b) {
        if (std::abs(resource_g[b]) <= 1e-14 * gbar_scale) {
            if (std::abs(target_g[b]) > 1e-14 * std::max(g_scale, 1.0)) {
                const auto [j, k] = pair_unindex(static_cast<int>(b) + 1, n);
                throw ZeroResourceCoupling("pair (" + std::to_string(j) + ", " + std::to_string(k) +
                                           ") has a target coupling but no resource coupling");
            }
            rhs[b] = 0.0;
            continue;
        }
        rhs[b] = t_f * target_g[b] / resource_g[b];
    }
    return rhs;
}

double condition_of(const Eigen::MatrixXd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& s = svd.singularValues();
    const double smin = s[s.size() - 1];
    return smin > 0.0 ? s[0] / smin : std::numeric_limits<double>::infinity();
}

}  // namespace

BlockTimes solve_block_times(const Eigen::VectorXd& target_g,
                             const Eigen::VectorXd& resource_g, double t_f,
                             int n_qubits) {
    if (n_qubits == 4) {
        throw SingularGeneratorSet("the N=4 pair-sandwich set is linearly dependent; "
                                   "use the augmented single-site fallback");
    }
    const int k = pair_count(n_qubits);
    if (target_g.size() != k || resource_g.size() != k) {
        throw DimensionError("solve_block_times: coupling vectors must have length N(N-1)/2");
    }
    const Eigen::MatrixXd m = sign_matrix(n_qubits);
    const Eigen::VectorXd rhs = scaled_rhs(target_g, resource_g, t_f, n_qubits);

    BlockTimes out;
    out.times = m.partialPivLu().solve(rhs);
    out.condition_number = condition_of(m);
    const double scale = std::max(rhs.cwiseAbs().maxCoeff(), 1.0);
    out.residual = (m * out.times - rhs).cwiseAbs().maxCoeff() / scale;
    if (out.residual > kResidualRel) {
        throw RankDeficient("solve_block_times: residual " + std::to_string(out.residual) +
                            " exceeds tolerance");
    }
    return out;
}

Remediation remediate_negative_times(const Eigen::VectorXd& times, int n_qubits,
                                     std::optional<double> homogeneous_g,
                                     bool allow_shift) {
    Remediation out;
    const double tmin = times.size() ? times.minCoeff() : 0.0;
    if (tmin >= 0.0) {
        out.times = times;
        out.strategy = "none";
        return out;
    }

    if (allow_shift) {
        const double lambda1 = sign_spectrum(n_qubits).lambda1;
        if (lambda1 < 0.0) {
            out.times = times.array() + std::abs(tmin);
            out.bare_time = std::abs(lambda1 * tmin);
            out.strategy = "eigenvector-shift";
            return out;
        }
    }

    if (homogeneous_g && *homogeneous_g != 0.0) {
        const double period = 2.0 * std::numbers::pi / std::abs(*homogeneous_g);
        out.times = times;
        for (Eigen::Index i = 0; i < out.times.size(); ++i) {
            double w = std::fmod(out.times[i], period);
            if (w < 0.0) w += period;
            out.times[i] = w;
        }
        out.strategy = "period-wrap";
        return out;
    }

    throw NoRemediation("negative block times need sign-inverted analog evolution, "
                        "which only the sudden-switching mode can execute");
}

namespace {

// Pair-indexed coupling vector of a pure two-body ZZ Hamiltonian.
Eigen::VectorXd pair_vector(const SpinHamiltonian& h) {
    const int n = h.n_qubits();
    Eigen::VectorXd g = Eigen::VectorXd::Zero(pair_count(n));
    for (const auto& [word, coeff] : h.terms()) {
        int a = -1, b = -1;
        for (int q = 0; q < n; ++q) {
            if (word.axis(q) == Axis::Z) (a < 0 ? a : b) = q;
        }
        g[pair_index(a + 1, b + 1, n) - 1] = coeff;
    }
    return g;
}

std::optional<double> homogeneous_coupling(const Eigen::VectorXd& gbar) {
    const double scale = gbar.cwiseAbs().maxCoeff();
    if (scale == 0.0) return std::nullopt;
    double value = 0.0;
    for (Eigen::Index i = 0; i < gbar.size(); ++i) {
        if (std::abs(gbar[i]) <= 1e-14 * scale) continue;
        if (value == 0.0) {
            value = gbar[i];
        } else if (std::abs(gbar[i] - value) > 1e-12 * scale) {
            return std::nullopt;
        }
    }
    return value;
}

bool nearest_neighbor_only(const Eigen::VectorXd& gbar, int n) {
    const double scale = gbar.cwiseAbs().maxCoeff();
    for (int alpha = 1; alpha <= pair_count(n); ++alpha) {
        const auto [j, k] = pair_unindex(alpha, n);
        if (k - j > 1 && std::abs(gbar[alpha - 1]) > 1e-14 * scale) return false;
    }
    return true;
}

// One sandwich generator: the X layer on `sites` (0-based), or the bare
// resource evolution when `sites` is empty.
struct Generator {
    std::vector<int> sites;
    std::string label;
};

Generator pair_generator(int alpha, int n) {
    const auto [j, k] = pair_unindex(alpha, n);
    return {{j - 1, k - 1}, "x" + std::to_string(j) + "x" + std::to_string(k)};
}

Generator site_generator(int site1) {
    return {{site1 - 1}, "x" + std::to_string(site1)};
}

// Sign the generator's X layer imprints on the ZZ coupling of pair beta.
double generator_sign(const Generator& gen, int beta, int n) {
    const auto [j, k] = pair_unindex(beta, n);
    int shared = 0;
    for (int s : gen.sites) shared += (s == j - 1) + (s == k - 1);
    return (shared % 2 == 0) ? 1.0 : -1.0;
}

int numeric_rank(const Eigen::MatrixXd& m) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    qr.setThreshold(1e-9);
    return static_cast<int>(qr.rank());
}

// Greedy selection of n-1 independent single-site sandwiches for
// nearest-neighbor compilation; appends the bare generator when no choice of
// sites spans the pair space (which happens at N=4).
std::vector<Generator> select_nn_generators(int n) {
    const int k = n - 1;
    std::vector<Generator> chosen;
    Eigen::MatrixXd rows(0, k);
    auto try_add = [&](const Generator& gen) {
        Eigen::MatrixXd next(rows.rows() + 1, k);
        next.topRows(rows.rows()) = rows;
        for (int j = 1; j <= k; ++j) {
            next(rows.rows(), j - 1) = generator_sign(gen, pair_index(j, j + 1, n), n);
        }
        if (numeric_rank(next) == next.rows()) {
            rows = std::move(next);
            chosen.push_back(gen);
        }
    };
    for (int site = 1; site <= n && static_cast<int>(chosen.size()) < k; ++site) {
        try_add(site_generator(site));
    }
    if (static_cast<int>(chosen.size()) < k) {
        try_add(Generator{{}, "bare"});
    }
    if (static_cast<int>(chosen.size()) < k) {
        throw SingularGeneratorSet("no spanning set of single-site sandwiches for N=" +
                                   std::to_string(n));
    }
    return chosen;
}

struct SolvedSystem {
    std::vector<Generator> generators;
    Eigen::VectorXd times;
    double condition_number = 0.0;
    double residual = 0.0;
    bool used_fallback = false;
};

SolvedSystem solve_general(const std::vector<Generator>& generators,
                           const std::vector<int>& pair_rows,  // beta indices, 1-based
                           const Eigen::VectorXd& rhs, int n, bool min_norm) {
    Eigen::MatrixXd a(pair_rows.size(), generators.size());
    for (std::size_t r = 0; r < pair_rows.size(); ++r) {
        for (std::size_t c = 0; c < generators.size(); ++c) {
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                generator_sign(generators[c], pair_rows[r], n);
        }
    }
    SolvedSystem out;
    out.generators = generators;
    out.condition_number = condition_of(a);
    if (min_norm) {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
        out.times = cod.solve(rhs);
    } else {
        out.times = a.partialPivLu().solve(rhs);
    }
    const double scale = std::max(rhs.cwiseAbs().maxCoeff(), 1.0);
    out.residual = (a * out.times - rhs).cwiseAbs().maxCoeff() / scale;
    if (out.residual > kResidualRel) {
        throw RankDeficient("sandwich-time solve: residual " + std::to_string(out.residual) +
                            " exceeds tolerance");
    }
    return out;
}

RotationLayer x_layer(int n, const std::vector<int>& sites) {
    return RotationLayer::x_on(n, sites);
}

// Turns a solved generator system into sandwiched analog blocks, applying the
// negative-time policy and dropping numerically-zero blocks.
CompiledSchedule emit(Schedule& schedule, CompileReport& report, SolvedSystem& sys,
                      int n, std::optional<double> homog, bool allow_shift,
                      double drop_tol) {
    for (const auto& gen : sys.generators) report.generator_labels.push_back(gen.label);
    report.times = sys.times;
    report.condition_number = sys.condition_number;
    report.condition_warning = sys.condition_number > kConditionWarn;
    report.residual = sys.residual;
    report.used_fallback = sys.used_fallback;

    Eigen::VectorXd durations;
    std::vector<int> signs(sys.generators.size(), +1);
    try {
        Remediation rem = remediate_negative_times(sys.times, n, homog, allow_shift);
        durations = rem.times;
        report.bare_time = rem.bare_time;
        report.remediation = rem.strategy;
    } catch (const NoRemediation&) {
        durations = sys.times.cwiseAbs();
        for (std::size_t i = 0; i < signs.size(); ++i) {
            if (sys.times[static_cast<Eigen::Index>(i)] < 0.0) signs[i] = -1;
        }
        report.remediation = "sign-inversion";
    }
    report.shifted_times = durations;

    for (std::size_t i = 0; i < sys.generators.size(); ++i) {
        const double d = durations[static_cast<Eigen::Index>(i)];
        if (d <= drop_tol) continue;
        const auto& sites = sys.generators[i].sites;
        if (sites.empty()) {
            schedule.add_analog(d, signs[i]);
            continue;
        }
        const RotationLayer layer = x_layer(n, sites);
        schedule.add_layer(layer);
        schedule.add_analog(d, signs[i]);
        schedule.add_layer(layer);
    }
    if (report.bare_time > drop_tol) schedule.add_analog(report.bare_time, +1);
    return {std::move(schedule), std::move(report)};
}

}  // namespace

nlohmann::ordered_json CompileReport::to_json() const {
    nlohmann::ordered_json j;
    j["generators"] = generator_labels;
    j["times"] = std::vector<double>(times.data(), times.data() + times.size());
    j["shifted_times"] =
        std::vector<double>(shifted_times.data(), shifted_times.data() + shifted_times.size());
    j["bare_time"] = bare_time;
    j["condition_number"] = condition_number;
    j["condition_warning"] = condition_warning;
    j["residual"] = residual;
    j["remediation"] = remediation;
    j["used_fallback"] = used_fallback;
    j["analog_blocks"] = analog_blocks;
    j["total_analog_time"] = total_analog_time;
    return j;
}

CompiledSchedule compile_ising(const SpinHamiltonian& target,
                               const SpinHamiltonian& resource, double t_f,
                               const IsingOptions& opts) {
    if (target.n_qubits() != resource.n_qubits()) {
        throw DimensionError("compile_ising: target and resource register sizes differ");
    }
    if (!target.is_zz_two_body() || !resource.is_zz_two_body()) {
        throw InvalidArgument("compile_ising: both Hamiltonians must be pure two-body ZZ sums");
    }
    if (!std::isfinite(t_f)) {
        throw InvalidArgument("compile_ising: non-finite evolution time");
    }
    const int n = target.n_qubits();
    if (n < 2) {
        throw InvalidArgument("compile_ising: need at least 2 qubits");
    }

    const Eigen::VectorXd g = pair_vector(target);
    const Eigen::VectorXd gbar = pair_vector(resource);
    const std::optional<double> homog = homogeneous_coupling(gbar);
    const double drop_tol = 1e-12 * std::max(std::abs(t_f), 1.0);

    Schedule schedule(resource);
    CompileReport report;

    auto finish = [&](CompiledSchedule&& c) {
        c.schedule.simplify();
        c.report.analog_blocks = c.schedule.analog_count_per_repeat();
        c.report.total_analog_time = c.schedule.analog_time_per_repeat();
        return std::move(c);
    };

    // Shortcut: a target proportional to the resource is one bare block.
    // This also covers N=2 (a single pair) and the N=4 identity case.
    const double gbar_scale = gbar.cwiseAbs().maxCoeff();
    if (gbar_scale == 0.0) {
        // Resource is null; scaled_rhs below would reject any nonzero target,
        // so reuse its zero-coupling check and emit an empty schedule.
        (void)scaled_rhs(g, gbar, t_f, n);
        report.remediation = "none";
        return finish({std::move(schedule), std::move(report)});
    }
    Eigen::Index bmax = 0;
    gbar.cwiseAbs().maxCoeff(&bmax);
    const double c = g[bmax] / gbar[bmax];
    const bool proportional = (g - c * gbar).cwiseAbs().maxCoeff() <=
                              1e-12 * std::max(1.0, std::abs(c)) * gbar_scale;
    // A negative bare time on an inhomogeneous resource is better served by
    // the general solve whenever the eigenvector shift is available there.
    const bool shortcut =
        proportional && (c * t_f >= 0.0 || homog || n == 2 ||
                         (n != 4 && sign_spectrum(n).lambda1 >= 0.0) || n == 4);
    if (shortcut) {
        double tau = c * t_f;
        report.generator_labels = {"bare"};
        report.times = Eigen::VectorXd::Constant(1, tau);
        report.remediation = "none";
        int sign = +1;
        if (tau < 0.0) {
            if (homog) {
                const double period = 2.0 * std::numbers::pi / std::abs(*homog);
                tau = std::fmod(tau, period);
                if (tau < 0.0) tau += period;
                report.remediation = "period-wrap";
            } else {
                tau = -tau;
                sign = -1;
                report.remediation = "sign-inversion";
            }
        }
        report.shifted_times = Eigen::VectorXd::Constant(1, tau);
        if (tau > drop_tol) schedule.add_analog(tau, sign);
        return finish({std::move(schedule), std::move(report)});
    }

    // Assemble the generator set and pair equations.
    std::vector<int> pair_rows;
    std::vector<Generator> generators;
    bool min_norm = false;
    bool allow_shift = false;
    const bool nn = nearest_neighbor_only(gbar, n) && nearest_neighbor_only(g, n);
    if (nn) {
        for (int j = 1; j < n; ++j) pair_rows.push_back(pair_index(j, j + 1, n));
        generators = select_nn_generators(n);
        Eigen::VectorXd rhs_full = scaled_rhs(g, gbar, t_f, n);
        Eigen::VectorXd rhs(pair_rows.size());
        for (std::size_t r = 0; r < pair_rows.size(); ++r) {
            rhs[static_cast<Eigen::Index>(r)] = rhs_full[pair_rows[r] - 1];
        }
        SolvedSystem sys = solve_general(generators, pair_rows, rhs, n, false);
        return finish(emit(schedule, report, sys, n, homog, false, drop_tol));
    }

    for (int b = 1; b <= pair_count(n); ++b) pair_rows.push_back(b);
    if (n == 4) {
        if (!opts.allow_fallback) {
            throw SingularGeneratorSet(
                "N=4 all-to-all pair sandwiches are linearly dependent; "
                "enable the augmented single-site fallback to proceed");
        }
        for (int b = 1; b <= pair_count(n); ++b) generators.push_back(pair_generator(b, n));
        for (int s = 1; s <= n; ++s) generators.push_back(site_generator(s));
        min_norm = true;
    } else {
        for (int b = 1; b <= pair_count(n); ++b) generators.push_back(pair_generator(b, n));
        allow_shift = true;
    }
    const Eigen::VectorXd rhs = scaled_rhs(g, gbar, t_f, n);
    SolvedSystem sys = solve_general(generators, pair_rows, rhs, n, min_norm);
    sys.used_fallback = min_norm;
    return finish(emit(schedule, report, sys, n, homog, allow_shift, drop_tol));
}

CompiledSchedule cz_gadget(const SpinHamiltonian& resource, int qubit_a, int qubit_b,
                           double phi, double t_f, const IsingOptions& opts) {
    const int n = resource.n_qubits();
    // Site labels are 1-based, matching the pair indexing.
    if (qubit_a == qubit_b || qubit_a < 1 || qubit_b < 1 || qubit_a > n || qubit_b > n) {
        throw InvalidArgument("cz_gadget: need two distinct qubits in 1.." +
                              std::to_string(n));
    }
    if (t_f == 0.0 || !std::isfinite(t_f)) {
        throw InvalidArgument("cz_gadget: evolution time must be finite and nonzero");
    }
    const int site_a = qubit_a - 1;
    const int site_b = qubit_b - 1;
    SpinHamiltonian target(n);
    PauliWord zz(n);
    zz.set_axis(site_a, Axis::Z);
    zz.set_axis(site_b, Axis::Z);
    target.add_term(-phi / (2.0 * t_f), zz);

    CompiledSchedule zz_part = compile_ising(target, resource, t_f, opts);

    Schedule out(resource);
    if (phi != 0.0) {
        RotationLayer layer(n);
        Eigen::Matrix2cd zrot;
        const cplx i(0.0, 1.0);
        zrot << std::exp(i * (phi / 2.0)), 0.0, 0.0, std::exp(-i * (phi / 2.0));
        layer.set_gate(site_a, zrot);
        layer.set_gate(site_b, zrot);
        out.add_layer(std::move(layer));
    }
    for (const auto& block : zz_part.schedule.blocks()) {
        if (const auto* a = std::get_if<AnalogBlock>(&block)) {
            out.add_analog(a->duration, a->sign);
        } else {
            out.add_layer(std::get<RotationLayer>(block));
        }
    }
    out.simplify();
    CompileReport report = std::move(zz_part.report);
    report.analog_blocks = out.analog_count_per_repeat();
    report.total_analog_time = out.analog_time_per_repeat();
    return {std::move(out), std::move(report)};
}

}  // namespace daqc
