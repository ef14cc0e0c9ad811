#include "daqc/executor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "daqc/dense.hpp"
#include "daqc/errors.hpp"
#include "daqc/pauli.hpp"
#include "daqc/propagator.hpp"

namespace daqc {

namespace {

using cplx = std::complex<double>;

std::atomic<int>& convention_flag() {
    static std::atomic<int> flag{+1};
    return flag;
}

void check_state_size(const Schedule& schedule, const StateVector& psi, const char* who) {
    if (psi.n_qubits() != schedule.n_qubits()) {
        throw DimensionError(std::string(who) + ": state register size " +
                             std::to_string(psi.n_qubits()) + " does not match schedule size " +
                             std::to_string(schedule.n_qubits()));
    }
}

Eigen::Matrix2cd pauli_matrix(char axis) {
    Eigen::Matrix2cd m;
    switch (axis) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw InvalidArgument(std::string("unknown Pauli axis '") + axis + "'");
    }
    return m;
}

Eigen::Matrix4cd two_qubit_pauli(char a, char b) {
    return Eigen::Matrix4cd(kron(pauli_matrix(a), pauli_matrix(b)));
}

// exp(i phi s_a s_b) on two qubits; (s_a s_b)^2 = 1 makes this closed-form.
Eigen::Matrix4cd pair_phase_gate(char a, char b, double phi) {
    return std::cos(phi) * Eigen::Matrix4cd::Identity() +
           cplx(0, 1) * std::sin(phi) * two_qubit_pauli(a, b);
}

}  // namespace

int phase_convention() { return convention_flag().load(std::memory_order_relaxed); }

void set_phase_convention(int sign) {
    if (sign != 1 && sign != -1) {
        throw InvalidArgument("set_phase_convention: sign must be +1 or -1, got " +
                              std::to_string(sign));
    }
    convention_flag().store(sign, std::memory_order_relaxed);
}

// ---------------------------------------------------------------------------
// Sudden-switching runner
// ---------------------------------------------------------------------------

StateVector run_sdaqc(const Schedule& schedule, StateVector psi) {
    check_state_size(schedule, psi, "run_sdaqc");
    const double conv = phase_convention();
    for (int rep = 0; rep < schedule.n_repeats(); ++rep) {
        for (const auto& block : schedule.blocks()) {
            if (const auto* analog = std::get_if<AnalogBlock>(&block)) {
                if (!(analog->duration >= 0.0) || !std::isfinite(analog->duration)) {
                    throw InvalidArgument(
                        "run_sdaqc: analog duration must be finite and >= 0; reversed "
                        "evolution must use the sign flag");
                }
                evolve(psi, schedule.base(), conv * analog->sign * analog->duration);
            } else {
                std::get<RotationLayer>(block).apply(psi);
            }
        }
    }
    return psi;
}

// ---------------------------------------------------------------------------
// Banged runner
// ---------------------------------------------------------------------------

BangTimeline build_bang_timeline(const Schedule& schedule, double pulse_width) {
    if (!std::isfinite(pulse_width) || pulse_width <= 0.0) {
        throw InvalidArgument("build_bang_timeline: pulse width must be finite and > 0, got " +
                              std::to_string(pulse_width));
    }

    // Flatten the repeated block list into analog durations plus at most one
    // composed rotation layer per block boundary.
    std::vector<double> durations;
    std::vector<std::pair<std::size_t, RotationLayer>> boundary_layers;
    for (int rep = 0; rep < schedule.n_repeats(); ++rep) {
        for (const auto& block : schedule.blocks()) {
            if (const auto* analog = std::get_if<AnalogBlock>(&block)) {
                if (analog->sign != +1) {
                    throw InvalidArgument(
                        "build_bang_timeline: sign-reversed analog blocks require sudden "
                        "switching; the always-on base Hamiltonian cannot change sign");
                }
                if (!(analog->duration >= 0.0) || !std::isfinite(analog->duration)) {
                    throw InvalidArgument(
                        "build_bang_timeline: analog duration must be finite and >= 0");
                }
                if (analog->duration > 0.0) durations.push_back(analog->duration);
            } else {
                const auto& layer = std::get<RotationLayer>(block);
                if (!boundary_layers.empty() && boundary_layers.back().first == durations.size()) {
                    boundary_layers.back().second =
                        layer.composed_after(boundary_layers.back().second);
                } else {
                    boundary_layers.emplace_back(durations.size(), layer);
                }
            }
        }
    }

    BangTimeline timeline;
    timeline.pulse_width = pulse_width;
    for (double d : durations) timeline.total_time += d;

    if (boundary_layers.empty()) {
        for (double d : durations) {
            BangSegment seg;
            seg.start = timeline.total_time;  // placeholder, fixed below
            seg.width = d;
            timeline.segments.push_back(seg);
        }
        double cursor = 0.0;
        for (auto& seg : timeline.segments) {
            seg.start = cursor;
            cursor += seg.width;
        }
        return timeline;
    }

    if (durations.empty()) {
        throw PulseOverlap(
            "build_bang_timeline: schedule has rotation layers but no analog time to host "
            "the pulses");
    }
    const double min_duration = *std::min_element(durations.begin(), durations.end());
    if (pulse_width > min_duration) {
        throw PulseOverlap("build_bang_timeline: pulse width " + std::to_string(pulse_width) +
                           " exceeds the smallest analog duration " +
                           std::to_string(min_duration));
    }

    std::vector<double> boundary_time(durations.size() + 1, 0.0);
    for (std::size_t i = 0; i < durations.size(); ++i) {
        boundary_time[i + 1] = boundary_time[i] + durations[i];
    }
    const double total = timeline.total_time;
    const double tol = 1e-12 * std::max(1.0, total);

    // Window start per pulse: leading pulse flush at 0, trailing pulse flush
    // at the end, interior pulses centered on their boundary.
    std::vector<std::pair<double, int>> windows;  // (start, layer index)
    timeline.layers.reserve(boundary_layers.size());
    for (auto& [boundary, layer] : boundary_layers) {
        double start;
        if (boundary == 0) {
            start = 0.0;
        } else if (boundary == durations.size()) {
            start = total - pulse_width;
        } else {
            start = boundary_time[boundary] - pulse_width / 2.0;
        }
        windows.emplace_back(start, static_cast<int>(timeline.layers.size()));
        timeline.layers.push_back(std::move(layer));
    }
    for (std::size_t i = 0; i + 1 < windows.size(); ++i) {
        if (windows[i + 1].first < windows[i].first + pulse_width - tol) {
            throw PulseOverlap("build_bang_timeline: pulse windows starting at " +
                               std::to_string(windows[i].first) + " and " +
                               std::to_string(windows[i + 1].first) + " overlap for width " +
                               std::to_string(pulse_width));
        }
    }

    double cursor = 0.0;
    for (const auto& [start, layer_index] : windows) {
        if (start > cursor + tol) {
            BangSegment gap;
            gap.start = cursor;
            gap.width = start - cursor;
            timeline.segments.push_back(gap);
            cursor = start;
        }
        BangSegment pulse;
        pulse.start = cursor;
        pulse.width = pulse_width;
        pulse.layer = layer_index;
        timeline.segments.push_back(pulse);
        cursor += pulse_width;
    }
    if (total > cursor + tol) {
        BangSegment tail;
        tail.start = cursor;
        tail.width = total - cursor;
        timeline.segments.push_back(tail);
    }
    return timeline;
}

StateVector run_bdaqc(const Schedule& schedule, StateVector psi, double pulse_width) {
    check_state_size(schedule, psi, "run_bdaqc");
    const BangTimeline timeline = build_bang_timeline(schedule, pulse_width);
    const double conv = phase_convention();

    Eigen::MatrixXcd base_dense;
    if (!timeline.layers.empty()) base_dense = schedule.base().matrix();

    for (const auto& seg : timeline.segments) {
        if (seg.layer < 0) {
            evolve(psi, schedule.base(), conv * seg.width);
        } else {
            const Eigen::MatrixXcd ham =
                conv * seg.width * base_dense +
                timeline.layers[static_cast<std::size_t>(seg.layer)].generator_matrix();
            psi.apply_matrix(expi_hermitian(ham, 1.0));
        }
    }
    return psi;
}

// ---------------------------------------------------------------------------
// Per-step error estimator
// ---------------------------------------------------------------------------

BangErrorEstimate bang_error_estimate(const Eigen::MatrixXcd& h_i, const Eigen::MatrixXcd& h_r,
                                      double dt) {
    if (h_i.rows() != h_i.cols() || h_r.rows() != h_r.cols() || h_i.rows() != h_r.rows()) {
        throw DimensionError("bang_error_estimate: operators must be square and equally sized");
    }
    if (!is_hermitian(h_i) || !is_hermitian(h_r)) {
        throw InvalidArgument("bang_error_estimate: operators must be Hermitian");
    }
    if (!std::isfinite(dt) || dt <= 0.0) {
        throw InvalidArgument("bang_error_estimate: dt must be finite and > 0");
    }

    BangErrorEstimate out;
    const Eigen::MatrixXcd comm = h_i * h_r - h_r * h_i;
    const Eigen::MatrixXcd sum = h_i + 2.0 * h_r;
    out.estimate = dt * dt * dt / 4.0 * spectral_norm(comm * sum - sum * comm);

    const Eigen::MatrixXcd exact = expi_hermitian(h_i + h_r, dt);
    const Eigen::MatrixXcd half = expi_hermitian(h_i, dt / 2.0);
    const Eigen::MatrixXcd pulse = expi_hermitian(h_r, dt);
    out.measured = spectral_norm(half * pulse * half - exact);
    out.boundary_measured = spectral_norm(expi_hermitian(h_i, dt) * pulse - exact);
    return out;
}

nlohmann::ordered_json BangErrorEstimate::to_json() const {
    return nlohmann::ordered_json{{"estimate", estimate},
                                  {"measured", measured},
                                  {"boundary_measured", boundary_measured}};
}

// ---------------------------------------------------------------------------
// Digital baseline
// ---------------------------------------------------------------------------

namespace {

constexpr char kChannelAxes[2] = {'X', 'Z'};

DqcIdentityRecord compute_identity_record() {
    DqcIdentityRecord record;
    const Eigen::Matrix4cd y_first = two_qubit_pauli('Y', 'I');
    const Eigen::Matrix4cd a = expi_hermitian(y_first, std::numbers::pi / 4.0);

    for (char mu : kChannelAxes) {
        for (char nu : kChannelAxes) {
            const Eigen::Matrix4cd smn = two_qubit_pauli(mu, nu);
            const Eigen::Matrix4cd b = expi_hermitian(smn, std::numbers::pi / 4.0);
            const auto w = [&](double phi) -> Eigen::Matrix4cd {
                return a * b * expi_hermitian(y_first, phi) * b * a.adjoint();
            };

            // The fixed factor is the phi = 0 value of the sequence. Identify
            // it as coeff * (Pauli x Pauli).
            const Eigen::Matrix4cd c = w(0.0);
            DqcIdentityRecord::Channel ch;
            ch.mu = mu;
            ch.nu = nu;
            double best = 0.0;
            for (char ca : {'I', 'X', 'Y', 'Z'}) {
                for (char cb : {'I', 'X', 'Y', 'Z'}) {
                    const cplx coeff = (two_qubit_pauli(ca, cb).adjoint() * c).trace() / 4.0;
                    if (std::abs(coeff) > best) {
                        best = std::abs(coeff);
                        ch.correction_coeff = coeff;
                        ch.correction_mu = ca;
                        ch.correction_nu = cb;
                    }
                }
            }
            const double c_residual =
                max_abs(Eigen::MatrixXcd(c - ch.correction_coeff *
                                                 two_qubit_pauli(ch.correction_mu,
                                                                 ch.correction_nu)));

            // Fit the rotation sign: C^dagger W(phi) = exp(i phi * s * smn).
            const double phi_probe = 0.7;
            const Eigen::Matrix4cd e = c.adjoint() * w(phi_probe);
            const cplx gen = ((e - std::cos(phi_probe) * Eigen::Matrix4cd::Identity()) *
                              smn.adjoint())
                                 .trace() /
                             (cplx(0, 1) * std::sin(phi_probe) * 4.0);
            ch.generator_sign = gen.real() >= 0.0 ? +1 : -1;

            // Deviation of the corrected identity
            //   exp(+i phi smn) = C^dagger W(generator_sign * phi).
            double dev = c_residual;
            for (double phi : {0.0, 0.3, 1.1, std::numbers::pi / 3.0}) {
                const Eigen::Matrix4cd lhs = expi_hermitian(smn, phi);
                const Eigen::Matrix4cd rhs = c.adjoint() * w(ch.generator_sign * phi);
                dev = std::max(dev, max_abs(Eigen::MatrixXcd(lhs - rhs)));
            }
            ch.deviation = dev;
            if (dev > 1e-10) {
                throw Error(
                    "dqc_identity_record: five-factor sequence did not reduce to a fixed "
                    "Pauli correction times a rotation (deviation " +
                    std::to_string(dev) + ")");
            }
            record.channels.push_back(ch);
            record.max_deviation = std::max(record.max_deviation, dev);
        }
    }
    return record;
}

}  // namespace

const DqcIdentityRecord& dqc_identity_record() {
    static const DqcIdentityRecord record = compute_identity_record();
    return record;
}

nlohmann::ordered_json DqcIdentityRecord::to_json() const {
    nlohmann::ordered_json channels_json = nlohmann::ordered_json::array();
    for (const auto& ch : channels) {
        channels_json.push_back(nlohmann::ordered_json{
            {"channel", std::string{ch.mu, ch.nu}},
            {"correction", std::string{ch.correction_mu, ch.correction_nu}},
            {"correction_coeff_re", ch.correction_coeff.real()},
            {"correction_coeff_im", ch.correction_coeff.imag()},
            {"generator_sign", ch.generator_sign},
            {"deviation", ch.deviation},
        });
    }
    return nlohmann::ordered_json{{"channels", channels_json},
                                  {"max_deviation", max_deviation}};
}

DqcResult run_dqc_baseline(const SpinHamiltonian& target, const SpinHamiltonian& resource,
                           double t_f, int n_trotter, DqcMode mode, const StateVector& psi0) {
    const int n = target.n_qubits();
    if (resource.n_qubits() != n) {
        throw DimensionError("run_dqc_baseline: target has " + std::to_string(n) +
                             " qubits but resource has " + std::to_string(resource.n_qubits()));
    }
    if (psi0.n_qubits() != n) {
        throw DimensionError("run_dqc_baseline: initial state register size mismatch");
    }
    if (n_trotter < 1) {
        throw InvalidArgument("run_dqc_baseline: Trotter count must be >= 1");
    }
    if (!std::isfinite(t_f)) {
        throw InvalidArgument("run_dqc_baseline: final time must be finite");
    }
    if (!resource.is_zz_two_body()) {
        throw InvalidArgument("run_dqc_baseline: resource must be a two-body ZZ network");
    }
    for (const auto& [word, coeff] : target.terms()) {
        if (word.weight() != 2) {
            throw InvalidArgument("run_dqc_baseline: target term " + word.str() +
                                  " is not two-body; only X/Z pair targets are supported");
        }
        for (int q = 0; q < n; ++q) {
            const Axis ax = word.axis(q);
            if (ax == Axis::Y) {
                throw InvalidArgument("run_dqc_baseline: target term " + word.str() +
                                      " uses a Y axis; only X/Z pair targets are supported");
            }
        }
    }

    const auto& identity = dqc_identity_record();

    const auto resource_coupling = [&](int j, int k) {
        PauliWord zz(n);
        zz.set_axis(j, Axis::Z);
        zz.set_axis(k, Axis::Z);
        const double g = resource.coefficient(zz);
        if (g == 0.0) {
            throw ZeroResourceCoupling("run_dqc_baseline: resource coupling between qubits " +
                                       std::to_string(j + 1) + " and " + std::to_string(k + 1) +
                                       " is zero; pi/4 gates there cost infinite time");
        }
        return std::abs(g);
    };

    DqcResult result{psi0};
    result.mode = mode;
    result.n_trotter = n_trotter;
    result.identity_deviation = identity.max_deviation;

    const double conv = phase_convention();
    const double t_step = t_f / n_trotter;
    const double quarter = std::numbers::pi / 4.0;

    // Gather the executed pair terms once: (j, k, mu, nu, coefficient).
    struct Term {
        int j, k;
        char mu, nu;
        double g;
    };
    std::vector<Term> terms;
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            bool pair_used = false;
            for (char mu : kChannelAxes) {
                for (char nu : kChannelAxes) {
                    PauliWord word(n);
                    word.set_axis(j, mu == 'X' ? Axis::X : Axis::Z);
                    word.set_axis(k, nu == 'X' ? Axis::X : Axis::Z);
                    const double g = target.coefficient(word);
                    if (g == 0.0) continue;
                    terms.push_back(Term{j, k, mu, nu, g});
                    pair_used = true;
                }
            }
            if (pair_used) result.pairs.emplace_back(j, k);
        }
    }

    // Time accounting per Trotter step. Channels with zero target coefficient
    // are skipped outright (no gates, no time).
    for (const auto& [j, k] : result.pairs) {
        int channels_here = 0;
        for (const auto& term : terms) {
            if (term.j == j && term.k == k) ++channels_here;
        }
        double pair_time = 0.0;
        int pair_gates = 0;
        if (mode == DqcMode::DirectAllToAll) {
            pair_time = channels_here * 2.0 * quarter / resource_coupling(j, k);
            pair_gates = channels_here * 2;
        } else {
            // Bring qubit j adjacent to k with two-gate swap units, run every
            // channel term on the neighbouring pair, swap back. The chain is
            // amortized over the pair's channel terms.
            for (int m = j; m <= k - 2; ++m) {
                pair_time += 4.0 * quarter / resource_coupling(m, m + 1);
                pair_gates += 4;
            }
            pair_time += channels_here * 2.0 * quarter / resource_coupling(k - 1, k);
            pair_gates += channels_here * 2;
        }
        result.pair_gate_times.push_back(pair_time);
        result.gate_time_per_step += pair_time;
        result.two_qubit_gates_per_step += pair_gates;
    }
    result.total_gate_time = result.gate_time_per_step * n_trotter;

    // Execute: both modes realize the same exact pair rotations; they differ
    // only in how the pi/4 gates are charged above.
    for (int step = 0; step < n_trotter; ++step) {
        for (const auto& term : terms) {
            const double phi = conv * t_step * term.g;
            result.state.apply_two_qubit(term.j, term.k,
                                         pair_phase_gate(term.mu, term.nu, phi));
        }
    }
    return result;
}

nlohmann::ordered_json DqcResult::to_json() const {
    nlohmann::ordered_json pairs_json = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        pairs_json.push_back(nlohmann::ordered_json{{"j", pairs[i].first + 1},
                                                    {"k", pairs[i].second + 1},
                                                    {"gate_time_per_step", pair_gate_times[i]}});
    }
    return nlohmann::ordered_json{
        {"mode", mode == DqcMode::DirectAllToAll ? "direct-ata" : "nn-swap"},
        {"n_trotter", n_trotter},
        {"gate_time_per_step", gate_time_per_step},
        {"total_gate_time", total_gate_time},
        {"two_qubit_gates_per_step", two_qubit_gates_per_step},
        {"identity_deviation", identity_deviation},
        {"pairs", pairs_json},
    };
}

// ---------------------------------------------------------------------------
// Time accounting
// ---------------------------------------------------------------------------

TimeReport schedule_time_report(const Schedule& schedule) {
    TimeReport report;
    report.n_repeats = schedule.n_repeats();
    for (const auto& block : schedule.blocks()) {
        if (const auto* analog = std::get_if<AnalogBlock>(&block)) {
            report.durations_per_step.push_back(analog->duration);
            report.analog_time_per_step += analog->duration;
            ++report.analog_blocks_per_step;
        } else {
            ++report.layers_per_step;
        }
    }
    report.total_analog_time = report.analog_time_per_step * report.n_repeats;
    if (!report.durations_per_step.empty()) {
        const auto it =
            std::max_element(report.durations_per_step.begin(), report.durations_per_step.end());
        report.max_duration = *it;
        report.max_duration_index =
            static_cast<std::size_t>(it - report.durations_per_step.begin());
    }
    return report;
}

nlohmann::ordered_json TimeReport::to_json() const {
    return nlohmann::ordered_json{
        {"n_repeats", n_repeats},
        {"analog_blocks_per_step", analog_blocks_per_step},
        {"layers_per_step", layers_per_step},
        {"analog_time_per_step", analog_time_per_step},
        {"total_analog_time", total_analog_time},
        {"durations_per_step", durations_per_step},
        {"max_duration", max_duration},
        {"max_duration_index", max_duration_index},
    };
}

}  // namespace daqc
