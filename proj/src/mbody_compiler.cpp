#include "daqc/mbody_compiler.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "daqc/errors.hpp"
#include "daqc/models.hpp"
#include "daqc/rng.hpp"
#include "daqc/rotation.hpp"

namespace daqc {

namespace {

constexpr double kResidualTol = 1e-8;

// Factorial rotation design. Each qubit owns a rigid triple of reflection
// axes and reads its layer-local choice from one base-3 digit of l, with the
// digit position cycling q mod m_body. Any m_body consecutive sites then use
// distinct digits, so every window sees all 3^m_body combinations of its
// per-site reflections exactly once. That combinatorial balance matters
// because the coefficient space of one window has dimension 3^m_body,
// exactly matching the layer count: an unstructured axis stream leaves the
// per-window square system nearly singular, and axes correlated across
// qubits punch exact holes into it.
//
// The triple itself is three axes at equal polar angle (35 degrees) with
// azimuths 120 degrees apart, independently re-oriented per qubit by a
// seeded random rotation. The equal-angle geometry keeps the three
// reflection images of a generic direction well spread, and the per-qubit
// orientations decorrelate each triple's unavoidable weak directions
// across the sites of a window.
std::vector<Eigen::Matrix<double, Eigen::Dynamic, 3>> rotation_axes_for(
    int n_qubits, int m_body, std::uint64_t seed) {
    constexpr double kPolar = 35.0 * std::numbers::pi / 180.0;
    std::array<Eigen::Vector3d, 3> base;
    for (int c = 0; c < 3; ++c) {
        const double phi = 2.0 * std::numbers::pi * c / 3.0;
        base[static_cast<std::size_t>(c)] = {std::sin(kPolar) * std::cos(phi),
                                             std::sin(kPolar) * std::sin(phi), std::cos(kPolar)};
    }
    std::vector<std::array<Eigen::Vector3d, 3>> triples(static_cast<std::size_t>(n_qubits));
    for (int q = 0; q < n_qubits; ++q) {
        CounterRng rng(seed, 0x6d62, static_cast<std::uint64_t>(q));
        const double u1 = rng.uniform();
        const double u2 = rng.uniform();
        const double u3 = rng.uniform();
        const double a = std::sqrt(1.0 - u1);
        const double b = std::sqrt(u1);
        const Eigen::Quaterniond rot(a * std::sin(2.0 * std::numbers::pi * u2),
                                     a * std::cos(2.0 * std::numbers::pi * u2),
                                     b * std::sin(2.0 * std::numbers::pi * u3),
                                     b * std::cos(2.0 * std::numbers::pi * u3));
        const Eigen::Matrix3d r = rot.toRotationMatrix();
        for (int c = 0; c < 3; ++c) {
            triples[static_cast<std::size_t>(q)][static_cast<std::size_t>(c)] =
                r * base[static_cast<std::size_t>(c)];
        }
    }
    int layers = 1;
    for (int i = 0; i < m_body; ++i) layers *= 3;
    std::vector<Eigen::Matrix<double, Eigen::Dynamic, 3>> axes;
    axes.reserve(static_cast<std::size_t>(layers));
    for (int l = 0; l < layers; ++l) {
        Eigen::Matrix<double, Eigen::Dynamic, 3> m(n_qubits, 3);
        for (int q = 0; q < n_qubits; ++q) {
            int digit = l;
            for (int i = 0; i < q % m_body; ++i) digit /= 3;
            m.row(q) = triples[static_cast<std::size_t>(q)][static_cast<std::size_t>(digit % 3)];
        }
        axes.push_back(std::move(m));
    }
    return axes;
}

RotationLayer layer_from_axes(const Eigen::Matrix<double, Eigen::Dynamic, 3>& axes) {
    std::vector<std::pair<int, Eigen::Vector3d>> list;
    list.reserve(static_cast<std::size_t>(axes.rows()));
    for (int q = 0; q < axes.rows(); ++q) {
        list.emplace_back(q, Eigen::Vector3d(axes.row(q)));
    }
    return RotationLayer::reflection(static_cast<int>(axes.rows()), list);
}

std::vector<std::optional<Eigen::Vector3d>> optional_axes(
    const Eigen::Matrix<double, Eigen::Dynamic, 3>& axes) {
    std::vector<std::optional<Eigen::Vector3d>> out(static_cast<std::size_t>(axes.rows()));
    for (int q = 0; q < axes.rows(); ++q) out[static_cast<std::size_t>(q)] = axes.row(q);
    return out;
}

// Nearest-neighbor ZZ network from bond strengths (0-based bond b couples
// qubits b, b+1). Zero bonds are left out.
SpinHamiltonian zz_network(int n_qubits, const Eigen::VectorXd& bonds) {
    SpinHamiltonian h(n_qubits);
    for (int b = 0; b < bonds.size(); ++b) {
        if (bonds[b] == 0.0) continue;
        PauliWord w(n_qubits);
        w.set_axis(b, Axis::Z);
        w.set_axis(b + 1, Axis::Z);
        h.add_term(bonds[b], w);
    }
    return h;
}

// The all-qubit (X + Z)/sqrt(2) reflection layer; conjugation by it swaps
// Z and X, so ZZ evolutions wrapped in it realize XX evolutions.
RotationLayer xx_basis_layer(int n_qubits) {
    return RotationLayer::xz_reflection(
        std::vector<double>(static_cast<std::size_t>(n_qubits), std::numbers::pi / 2));
}

// Phase reduced into (-pi/2, pi/2]. Conjugation depends on 2 phi only, and
// the dropped multiple of pi is a global phase of the generator evolution.
double reduce_phase(double phi) {
    const double r = phi - std::numbers::pi * std::round(phi / std::numbers::pi);
    return std::abs(r) <= std::numbers::pi / 2 ? r : std::copysign(std::numbers::pi / 2, r);
}

void append_blocks(Schedule& dst, const Schedule& src) {
    for (const auto& blk : src.blocks()) {
        if (const auto* a = std::get_if<AnalogBlock>(&blk)) {
            dst.add_analog(a->duration, a->sign);
        } else {
            dst.add_layer(std::get<RotationLayer>(blk));
        }
    }
}

// Exact support window of a word: (0-based first site, size), or nullopt for
// identity / non-contiguous support.
std::optional<std::pair<int, int>> contiguous_window(const PauliWord& w) {
    int first = -1, last = -1, weight = 0;
    for (int q = 0; q < w.n_qubits(); ++q) {
        if (w.axis(q) == Axis::I) continue;
        if (first < 0) first = q;
        last = q;
        ++weight;
    }
    if (first < 0) return std::nullopt;
    if (weight != last - first + 1) return std::nullopt;
    return std::make_pair(first, weight);
}

long long window_family_size(int m_body, int n_qubits) {
    long long total = 0;
    long long combos = 3;
    for (int m = 2; m <= m_body; ++m) {
        combos *= 3;
        total += combos * (n_qubits - m + 1);
    }
    return total;
}

double series_formula(int m_body, int n_qubits) {
    const double a = 2.25 * (std::pow(3.0, m_body - 1) - 3.0);
    const double b = 13.5 * (1.5 - m_body);
    return a * n_qubits + b;
}

}  // namespace

int oxx_set_count(int m_body) {
    switch (m_body) {
        case 2: return 1;
        case 3: return 3;
        case 4: return 2;
        default:
            throw InvalidArgument("m-body generator sets: interaction weight must be 2, 3 or 4, got " +
                                  std::to_string(m_body));
    }
}

int oxx_stride(int m_body) {
    switch (m_body) {
        case 2: return 0;
        case 3: return 3;
        case 4: return 2;
        default:
            throw InvalidArgument("m-body generator sets: interaction weight must be 2, 3 or 4, got " +
                                  std::to_string(m_body));
    }
}

double default_oxx_phase(int position, int phase_set) {
    if (position < 1) {
        throw InvalidArgument("m-body default phase: positions are 1-based, got " +
                              std::to_string(position));
    }
    if (phase_set < 1 || phase_set > 4) {
        throw InvalidArgument("m-body default phase: phase set must be in 1..4, got " +
                              std::to_string(phase_set));
    }
    const double k = phase_set;
    return ((position - 1) % 4) < 2 ? 2.0 * std::numbers::pi * k / 3.0
                                    : 2.0 * std::numbers::pi * k / 5.0;
}

OXXLayer make_oxx_layer(int n_qubits, int m_body, int set_index, int phase_set) {
    const int sets = oxx_set_count(m_body);
    const int stride = oxx_stride(m_body);
    if (set_index < 1 || set_index > sets) {
        throw InvalidArgument("m-body generator sets: set index must be in 1.." +
                              std::to_string(sets) + ", got " + std::to_string(set_index));
    }
    if (phase_set < 1 || phase_set > 4) {
        throw InvalidArgument("m-body generator sets: phase set must be in 1..4, got " +
                              std::to_string(phase_set));
    }
    OXXLayer o;
    o.set_index = set_index;
    o.stride = stride;
    if (stride == 0) return o;  // weight-2 synthesis conjugates nothing
    for (int p = set_index; p + 1 <= n_qubits; p += stride) {
        o.positions.push_back(p);
        o.phases.push_back(default_oxx_phase(p, phase_set));
    }
    return o;
}

SpinHamiltonian OXXLayer::generator(int n_qubits) const {
    if (positions.size() != phases.size()) {
        throw InvalidArgument("XX generator layer: " + std::to_string(positions.size()) +
                              " positions but " + std::to_string(phases.size()) + " phases");
    }
    SpinHamiltonian g(n_qubits);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const int p = positions[i];
        if (p < 1 || p + 1 > n_qubits) {
            throw InvalidArgument("XX generator layer: position " + std::to_string(p) +
                                  " does not fit on " + std::to_string(n_qubits) + " qubits");
        }
        PauliWord w(n_qubits);
        w.set_axis(p - 1, Axis::X);
        w.set_axis(p, Axis::X);
        g.add_term(phases[i], w);
    }
    return g;
}

SpinHamiltonian conjugated_block(int n_qubits, const Eigen::VectorXd& bond_strengths,
                                 const OXXLayer& o) {
    if (bond_strengths.size() != n_qubits - 1) {
        throw DimensionError("conjugated block: expected " + std::to_string(n_qubits - 1) +
                             " bond strengths, got " + std::to_string(bond_strengths.size()));
    }
    if (o.positions.size() != o.phases.size()) {
        throw InvalidArgument("conjugated block: " + std::to_string(o.positions.size()) +
                              " generator positions but " + std::to_string(o.phases.size()) +
                              " phases");
    }
    std::vector<int> sorted = o.positions;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 1 || sorted[i] + 1 > n_qubits) {
            throw InvalidArgument("conjugated block: generator position " +
                                  std::to_string(sorted[i]) + " does not fit on " +
                                  std::to_string(n_qubits) + " qubits");
        }
        if (i > 0 && sorted[i] - sorted[i - 1] < 2) {
            throw InvalidArgument("conjugated block: generators at positions " +
                                  std::to_string(sorted[i - 1]) + " and " +
                                  std::to_string(sorted[i]) + " overlap");
        }
    }
    SpinHamiltonian h = zz_network(n_qubits, bond_strengths);
    for (std::size_t i = 0; i < o.positions.size(); ++i) {
        h = conjugate_by_xx(h, o.positions[i] - 1, o.positions[i], o.phases[i]);
    }
    return h;
}

SpinHamiltonian assemble_h0(int n_qubits, int m_body, const Eigen::VectorXd& strengths,
                            int phase_sets) {
    const int sets = oxx_set_count(m_body);
    const int bonds = n_qubits - 1;
    if (phase_sets < 1 || phase_sets > 4) {
        throw InvalidArgument("assemble_h0: phase sets must be in 1..4, got " +
                              std::to_string(phase_sets));
    }
    if (strengths.size() != static_cast<Eigen::Index>(sets) * phase_sets * bonds) {
        throw DimensionError("assemble_h0: expected " +
                             std::to_string(sets * phase_sets * bonds) + " strengths, got " +
                             std::to_string(strengths.size()));
    }
    SpinHamiltonian h0(n_qubits);
    for (int s = 0; s < sets; ++s) {
        for (int k = 0; k < phase_sets; ++k) {
            const OXXLayer o = make_oxx_layer(n_qubits, m_body, s + 1, k + 1);
            const Eigen::VectorXd slice = strengths.segment((s * phase_sets + k) * bonds, bonds);
            h0 += conjugated_block(n_qubits, slice, o);
        }
    }
    return h0;
}

std::vector<std::pair<int, int>> missing_support_windows(const SpinHamiltonian& h,
                                                         int max_weight) {
    std::map<std::pair<int, int>, bool> populated;
    for (int m = 2; m <= max_weight; ++m) {
        for (int start = 0; start + m <= h.n_qubits(); ++start) {
            populated[{start, m}] = false;
        }
    }
    for (const auto& [word, coeff] : h.terms()) {
        if (coeff == 0.0) continue;
        const auto window = contiguous_window(word);
        if (!window) continue;
        const auto it = populated.find(*window);
        if (it != populated.end()) it->second = true;
    }
    std::vector<std::pair<int, int>> missing;
    for (const auto& [window, hit] : populated) {
        if (!hit) missing.emplace_back(window.first + 1, window.second);
    }
    return missing;
}

std::size_t MBodyPlan::strength_index(int layer, int set, int phase_set, int bond) const {
    const int sets = oxx_set_count(m_body);
    const int bonds = n_qubits - 1;
    return static_cast<std::size_t>(
        ((static_cast<long long>(layer) * sets + set) * phase_sets + phase_set) * bonds + bond);
}

nlohmann::ordered_json MBodyPlan::to_json() const {
    nlohmann::ordered_json j;
    j["n_qubits"] = n_qubits;
    j["m_body"] = m_body;
    j["phase_sets"] = phase_sets;
    j["delegated_pure_zz"] = delegated_pure_zz;
    j["rotation_layers"] = rotation_axes.size();
    nlohmann::ordered_json axes = nlohmann::ordered_json::array();
    for (const auto& layer : rotation_axes) {
        nlohmann::ordered_json per_qubit = nlohmann::ordered_json::array();
        for (int q = 0; q < layer.rows(); ++q) {
            per_qubit.push_back({layer(q, 0), layer(q, 1), layer(q, 2)});
        }
        axes.push_back(std::move(per_qubit));
    }
    j["rotation_axes"] = std::move(axes);
    j["strengths"] = std::vector<double>(strengths.begin(), strengths.end());
    j["residual"] = residual;
    j["rank"] = rank;
    j["reconstruction_dev"] = reconstruction_dev;
    j["series_count"] = series_count;
    j["coefficient_count"] = coefficient_count;
    j["empirical_blocks"] = empirical_blocks;
    return j;
}

nlohmann::ordered_json BlockCount::to_json() const {
    nlohmann::ordered_json j;
    j["series_formula"] = series_formula;
    j["coefficient_count"] = coefficient_count;
    j["empirical"] = empirical;
    return j;
}

CompiledMBody compile_mbody(const SpinHamiltonian& target, const SpinHamiltonian& resource,
                            double t_f, const MBodyOptions& opts) {
    const int n = target.n_qubits();
    if (resource.n_qubits() != n) {
        throw DimensionError("m-body compile: target has " + std::to_string(n) +
                             " qubits but resource has " + std::to_string(resource.n_qubits()));
    }
    if (!std::isfinite(t_f)) {
        throw InvalidArgument("m-body compile: non-finite evolution time");
    }
    if (opts.n_trotter < 1) {
        throw InvalidArgument("m-body compile: Trotter step count must be >= 1, got " +
                              std::to_string(opts.n_trotter));
    }
    if (opts.phase_sets < 1 || opts.phase_sets > 4) {
        throw InvalidArgument("m-body compile: phase sets must be in 1..4, got " +
                              std::to_string(opts.phase_sets));
    }
    if (!resource.is_zz_two_body()) {
        throw InvalidArgument("m-body compile: resource must be a pure two-body ZZ sum");
    }

    // Window validation and weight inference.
    int inferred = 2;
    for (const auto& [word, coeff] : target.terms()) {
        if (coeff == 0.0) continue;
        const auto window = contiguous_window(word);
        if (!window || window->second < 2 || window->second > 4) {
            throw InvalidArgument(
                "m-body compile: target term " + word.str() +
                " must occupy a contiguous window of 2..4 sites");
        }
        inferred = std::max(inferred, window->second);
    }
    int m_eff = inferred;
    if (opts.m_body != 0) {
        if (opts.m_body < 2 || opts.m_body > 4) {
            throw InvalidArgument("m-body compile: interaction weight must be 2, 3 or 4, got " +
                                  std::to_string(opts.m_body));
        }
        if (opts.m_body < inferred) {
            throw InvalidArgument("m-body compile: target has weight-" + std::to_string(inferred) +
                                  " windows but only weight " + std::to_string(opts.m_body) +
                                  " was requested");
        }
        m_eff = opts.m_body;
    }
    if (n < m_eff) {
        throw DimensionError("m-body compile: need at least " + std::to_string(m_eff) +
                             " qubits, got " + std::to_string(n));
    }

    MBodyPlan plan;
    plan.n_qubits = n;
    plan.m_body = m_eff;
    plan.series_count = series_formula(m_eff, n);
    plan.coefficient_count = window_family_size(m_eff, n);

    // Pure ZZ targets need no rotation machinery at all.
    if (target.is_zz_two_body()) {
        CompiledSchedule direct = compile_ising(target, resource, t_f, opts.ising);
        plan.delegated_pure_zz = true;
        plan.phase_sets = opts.phase_sets;
        plan.empirical_blocks = direct.schedule.analog_count_per_repeat();
        return {std::move(direct.schedule), std::move(plan)};
    }

    // Weight-2 generator sets carry no phases, so extra phase sets would
    // only duplicate columns.
    const int phase_sets = m_eff == 2 ? 1 : opts.phase_sets;
    plan.phase_sets = phase_sets;

    int layers = 1;
    for (int i = 0; i < m_eff; ++i) layers *= 3;
    plan.rotation_axes = rotation_axes_for(n, m_eff, opts.rotation_seed);

    const int sets = oxx_set_count(m_eff);
    const int bonds = n - 1;
    const int pieces = sets * phase_sets;

    // Unit-strength conjugated bonds, shared by every rotation layer.
    std::vector<SpinHamiltonian> unit_blocks;
    unit_blocks.reserve(static_cast<std::size_t>(pieces * bonds));
    for (int s = 0; s < sets; ++s) {
        for (int k = 0; k < phase_sets; ++k) {
            const OXXLayer o = make_oxx_layer(n, m_eff, s + 1, k + 1);
            for (int b = 0; b < bonds; ++b) {
                Eigen::VectorXd unit = Eigen::VectorXd::Zero(bonds);
                unit[b] = 1.0;
                unit_blocks.push_back(conjugated_block(n, unit, o));
            }
        }
    }

    // Linear map from strengths (layer, set, phase set, bond) to the target
    // coefficient family. Rotations act per site, so every column stays
    // inside the window family.
    const std::vector<PauliWord> family = window_word_family(n, m_eff);
    std::map<PauliWord, int> row_of;
    for (std::size_t r = 0; r < family.size(); ++r) row_of[family[r]] = static_cast<int>(r);

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(family.size()),
                                              static_cast<Eigen::Index>(layers) * pieces * bonds);
    for (int l = 0; l < layers; ++l) {
        const auto axes = optional_axes(plan.rotation_axes[static_cast<std::size_t>(l)]);
        for (int p = 0; p < pieces * bonds; ++p) {
            const SpinHamiltonian rotated =
                conjugate_by_reflection_layer(unit_blocks[static_cast<std::size_t>(p)], axes);
            const Eigen::Index col = static_cast<Eigen::Index>(l) * pieces * bonds + p;
            for (const auto& [word, coeff] : rotated.terms()) {
                a(row_of.at(word), col) += coeff;
            }
        }
    }

    Eigen::VectorXd rhs(static_cast<Eigen::Index>(family.size()));
    for (std::size_t r = 0; r < family.size(); ++r) {
        rhs[static_cast<Eigen::Index>(r)] = target.coefficient(family[r]);
    }

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    plan.strengths = cod.solve(rhs);
    plan.rank = static_cast<int>(cod.rank());
    const double scale = std::max(rhs.cwiseAbs().maxCoeff(), 1.0);
    plan.residual = (a * plan.strengths - rhs).cwiseAbs().maxCoeff() / scale;
    if (plan.residual > kResidualTol) {
        throw RankDeficient("m-body compile: rotation and phase sets reach only rank " +
                            std::to_string(plan.rank) + " of the " +
                            std::to_string(family.size()) +
                            "-dimensional window family (residual " +
                            std::to_string(plan.residual) +
                            "); try a different rotation seed or all 4 phase sets");
    }

    // Independent rebuild through the Hamiltonian-level helpers; catches
    // assembly mistakes the residual cannot see.
    SpinHamiltonian rebuilt(n);
    for (int l = 0; l < layers; ++l) {
        const Eigen::VectorXd slice =
            plan.strengths.segment(static_cast<Eigen::Index>(l) * pieces * bonds, pieces * bonds);
        const SpinHamiltonian h0 = assemble_h0(n, m_eff, slice, phase_sets);
        rebuilt += conjugate_by_reflection_layer(
            h0, optional_axes(plan.rotation_axes[static_cast<std::size_t>(l)]));
    }
    rebuilt.prune();
    plan.reconstruction_dev = rebuilt.max_coefficient_delta(target);

    // Schedule emission: one Trotter step per repeat. Each (set, phase set)
    // piece realizes exp(+i dt H_piece) as exp(+iO) exp(+i dt H_zz) exp(-iO),
    // listed in time order (the -iO half first). The generator evolutions are
    // ZZ compilations wrapped in the Z<->X basis-change layer, and they do
    // not depend on the rotation layer, so they are compiled once per piece.
    const double dt = t_f / opts.n_trotter;
    Schedule sched(resource);
    const RotationLayer basis_swap = xx_basis_layer(n);

    struct GeneratorRealization {
        bool active = false;
        Schedule forward{SpinHamiltonian(1)};
        Schedule backward{SpinHamiltonian(1)};
    };
    std::vector<GeneratorRealization> generator_parts(static_cast<std::size_t>(pieces));
    for (int s = 0; s < sets; ++s) {
        for (int k = 0; k < phase_sets; ++k) {
            const OXXLayer o = make_oxx_layer(n, m_eff, s + 1, k + 1);
            Eigen::VectorXd reduced = Eigen::VectorXd::Zero(bonds);
            for (std::size_t i = 0; i < o.positions.size(); ++i) {
                reduced[o.positions[i] - 1] = reduce_phase(o.phases[i]);
            }
            auto& part = generator_parts[static_cast<std::size_t>(s * phase_sets + k)];
            if (reduced.cwiseAbs().maxCoeff() < 1e-15) continue;  // identity conjugation
            const SpinHamiltonian o_zz = zz_network(n, reduced);
            part.forward = compile_ising(o_zz, resource, 1.0, opts.ising).schedule;
            part.backward = compile_ising(o_zz, resource, -1.0, opts.ising).schedule;
            part.active = true;
        }
    }

    for (int l = 0; l < layers; ++l) {
        const RotationLayer rotation = layer_from_axes(plan.rotation_axes[static_cast<std::size_t>(l)]);
        sched.add_layer(rotation);
        for (int p = 0; p < pieces; ++p) {
            const Eigen::VectorXd slice = plan.strengths.segment(
                (static_cast<Eigen::Index>(l) * pieces + p) * bonds, bonds);
            if (slice.cwiseAbs().maxCoeff() == 0.0) continue;
            const auto& part = generator_parts[static_cast<std::size_t>(p)];
            if (part.active) {
                sched.add_layer(basis_swap);
                append_blocks(sched, part.backward);
                sched.add_layer(basis_swap);
            }
            append_blocks(sched, compile_ising(zz_network(n, slice), resource, dt, opts.ising).schedule);
            if (part.active) {
                sched.add_layer(basis_swap);
                append_blocks(sched, part.forward);
                sched.add_layer(basis_swap);
            }
        }
        sched.add_layer(rotation);
    }
    sched.simplify();
    sched.set_repeats(opts.n_trotter);
    plan.empirical_blocks = sched.analog_count_per_repeat();

    return {std::move(sched), std::move(plan)};
}

BlockCount count_blocks(int m_body, int n_qubits) {
    const int sets = oxx_set_count(m_body);  // validates the weight
    (void)sets;
    if (n_qubits < m_body) {
        throw DimensionError("m-body block count: need at least " + std::to_string(m_body) +
                             " qubits, got " + std::to_string(n_qubits));
    }
    BlockCount count;
    count.series_formula = series_formula(m_body, n_qubits);
    count.coefficient_count = window_family_size(m_body, n_qubits);

    const SpinHamiltonian target = build_mbody_target(n_qubits, m_body, 0.5, 7);
    const SpinHamiltonian resource =
        build_ising(n_qubits, CouplingProfile::homogeneous(0.5), Topology::NearestNeighbor);
    MBodyOptions opts;
    opts.m_body = m_body;
    count.empirical = compile_mbody(target, resource, 1.0, opts).plan.empirical_blocks;
    return count;
}

}  // namespace daqc
