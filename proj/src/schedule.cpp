#include "daqc/schedule.hpp"

#include <cmath>
#include <string>

#include "daqc/dense.hpp"
#include "daqc/errors.hpp"
#include "daqc/state.hpp"

namespace daqc {

namespace {
constexpr const char* kFormatVersion = "daqc-schedule/1";
}

Schedule::Schedule(SpinHamiltonian base) : base_(std::move(base)) {}

void Schedule::add_analog(double duration, int sign) {
    if (!(duration >= 0.0) || !std::isfinite(duration)) {
        throw InvalidArgument("Schedule::add_analog: duration must be finite and >= 0, got " +
                              std::to_string(duration) + " (negativity belongs in the sign flag)");
    }
    if (sign != 1 && sign != -1) {
        throw InvalidArgument("Schedule::add_analog: sign must be +1 or -1");
    }
    blocks_.push_back(AnalogBlock{duration, sign});
}

void Schedule::add_layer(RotationLayer layer) {
    if (layer.n_qubits() != n_qubits()) {
        throw DimensionError("Schedule::add_layer: layer register size " +
                             std::to_string(layer.n_qubits()) + " does not match schedule (" +
                             std::to_string(n_qubits()) + ")");
    }
    blocks_.push_back(std::move(layer));
}

void Schedule::set_repeats(int r) {
    if (r < 1) {
        throw InvalidArgument("Schedule::set_repeats: repeat count must be >= 1");
    }
    n_repeats_ = r;
}

void Schedule::simplify() {
    std::vector<Block> out;
    out.reserve(blocks_.size());
    for (auto& block : blocks_) {
        if (const auto* a = std::get_if<AnalogBlock>(&block)) {
            if (a->duration == 0.0) continue;
            out.push_back(*a);
            continue;
        }
        auto& layer = std::get<RotationLayer>(block);
        if (!out.empty()) {
            if (auto* prev = std::get_if<RotationLayer>(&out.back())) {
                *prev = layer.composed_after(*prev);
                if (prev->is_identity()) out.pop_back();
                continue;
            }
        }
        if (layer.is_identity()) continue;
        out.push_back(std::move(layer));
    }
    blocks_ = std::move(out);
}

std::size_t Schedule::analog_count_per_repeat() const {
    std::size_t n = 0;
    for (const auto& b : blocks_) n += std::holds_alternative<AnalogBlock>(b) ? 1 : 0;
    return n;
}

std::size_t Schedule::layer_count_per_repeat() const {
    return blocks_.size() - analog_count_per_repeat();
}

double Schedule::analog_time_per_repeat() const {
    double t = 0.0;
    for (const auto& b : blocks_) {
        if (const auto* a = std::get_if<AnalogBlock>(&b)) t += a->duration;
    }
    return t;
}

Eigen::MatrixXcd Schedule::unitary() const {
    const std::int64_t dim = std::int64_t{1} << n_qubits();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::VectorXd energies =
        base_.is_z_diagonal() ? base_.diagonal_energies() : Eigen::VectorXd();
    Eigen::MatrixXcd base_dense;
    if (!base_.is_z_diagonal()) base_dense = base_.matrix();

    auto apply_rep = [&]() {
        for (const auto& block : blocks_) {
            if (const auto* a = std::get_if<AnalogBlock>(&block)) {
                const double t = a->sign * a->duration;
                if (energies.size() > 0) {
                    for (std::int64_t c = 0; c < dim; ++c) {
                        kernels::apply_diagonal_phases(u.col(c), energies, t);
                    }
                } else {
                    u = expi_hermitian(base_dense, t) * u;
                }
                continue;
            }
            const auto& layer = std::get<RotationLayer>(block);
            for (int q = 0; q < n_qubits(); ++q) {
                const Eigen::Matrix2cd& g = layer.gate(q);
                if (g.isIdentity(0.0)) continue;
                for (std::int64_t c = 0; c < dim; ++c) {
                    kernels::apply_single_qubit(u.col(c), n_qubits(), q, g);
                }
            }
        }
    };
    for (int rep = 0; rep < n_repeats_; ++rep) apply_rep();
    return u;
}

nlohmann::ordered_json Schedule::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = kFormatVersion;
    j["n_qubits"] = n_qubits();
    j["base"] = base_.to_json();
    j["blocks"] = nlohmann::ordered_json::array();
    for (const auto& block : blocks_) {
        nlohmann::ordered_json b;
        if (const auto* a = std::get_if<AnalogBlock>(&block)) {
            b["type"] = "analog";
            b["duration"] = a->duration;
            b["sign"] = a->sign;
        } else {
            const auto& layer = std::get<RotationLayer>(block);
            b["type"] = "layer";
            b["qubits"] = nlohmann::ordered_json::array();
            for (const AxisAngle& aa : layer.axis_angles()) {
                b["qubits"].push_back({{"axis", {aa.axis.x(), aa.axis.y(), aa.axis.z()}},
                                       {"angle", aa.angle}});
            }
            b["width"] = layer.nominal_width();
        }
        j["blocks"].push_back(std::move(b));
    }
    j["repeats"] = n_repeats_;
    return j;
}

Schedule Schedule::from_json(const nlohmann::json& j) {
    const std::string version = j.value("version", "");
    if (version != kFormatVersion) {
        throw ConfigError("Schedule::from_json: unsupported format version '" + version + "'");
    }
    const int n = j.at("n_qubits").get<int>();
    SpinHamiltonian base = SpinHamiltonian::from_json(j.at("base"));
    if (base.n_qubits() != n) {
        throw ConfigError("Schedule::from_json: base Hamiltonian register size mismatch");
    }
    Schedule s(std::move(base));
    for (const auto& b : j.at("blocks")) {
        const std::string type = b.at("type").get<std::string>();
        if (type == "analog") {
            s.add_analog(b.at("duration").get<double>(), b.value("sign", 1));
        } else if (type == "layer") {
            const auto& qubits = b.at("qubits");
            if (static_cast<int>(qubits.size()) != n) {
                throw ConfigError("Schedule::from_json: layer must list every qubit once");
            }
            RotationLayer layer(n);
            for (int q = 0; q < n; ++q) {
                const double angle = qubits[static_cast<std::size_t>(q)].at("angle").get<double>();
                if (angle == 0.0) continue;
                const auto& ax = qubits[static_cast<std::size_t>(q)].at("axis");
                Eigen::Vector3d axis(ax.at(0).get<double>(), ax.at(1).get<double>(),
                                     ax.at(2).get<double>());
                const double norm = axis.norm();
                if (norm < 1e-12) {
                    throw ConfigError("Schedule::from_json: zero rotation axis");
                }
                layer = RotationLayer::axis_rotation(n, q, axis / norm, angle)
                            .composed_after(layer);
            }
            layer.set_nominal_width(b.value("width", 0.0));
            s.add_layer(std::move(layer));
        } else {
            throw ConfigError("Schedule::from_json: unknown block type '" + type + "'");
        }
    }
    s.set_repeats(j.value("repeats", 1));
    return s;
}

}  // namespace daqc
