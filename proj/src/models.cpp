#include "daqc/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "daqc/errors.hpp"
#include "daqc/rng.hpp"

namespace daqc {

CouplingProfile CouplingProfile::homogeneous(double j) {
    CouplingProfile p;
    p.kind_ = Kind::Homogeneous;
    p.j_ = j;
    return p;
}

CouplingProfile CouplingProfile::polynomial(double j, double alpha, bool physical_ion) {
    if (physical_ion && !(alpha > 0.0 && alpha < 3.0)) {
        throw InvalidArgument("CouplingProfile::polynomial: ion-realizable exponent must lie in (0, 3), got " +
                              std::to_string(alpha));
    }
    CouplingProfile p;
    p.kind_ = Kind::Polynomial;
    p.j_ = j;
    p.alpha_ = alpha;
    return p;
}

CouplingProfile CouplingProfile::exponential(double j) {
    CouplingProfile p;
    p.kind_ = Kind::Exponential;
    p.j_ = j;
    return p;
}

CouplingProfile CouplingProfile::explicit_table(std::map<std::pair<int, int>, double> table) {
    for (const auto& [pair, g] : table) {
        if (!std::isfinite(g)) {
            throw InvalidArgument("CouplingProfile::explicit_table: non-finite coupling for pair (" +
                                  std::to_string(pair.first) + ", " + std::to_string(pair.second) + ")");
        }
    }
    CouplingProfile p;
    p.kind_ = Kind::Explicit;
    p.table_ = std::move(table);
    return p;
}

double CouplingProfile::coupling(int a, int b) const {
    if (a == b) {
        throw InvalidArgument("CouplingProfile::coupling: sites must differ");
    }
    const int d = std::abs(a - b);
    switch (kind_) {
        case Kind::Homogeneous:
            return j_;
        case Kind::Polynomial:
            return j_ / std::pow(static_cast<double>(d), alpha_);
        case Kind::Exponential:
            return j_ * std::exp(-static_cast<double>((d - 1) * (d - 1)));
        case Kind::Explicit: {
            const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
            const auto it = table_.find(key);
            if (it == table_.end()) {
                throw InvalidArgument("CouplingProfile::coupling: no table entry for pair (" +
                                      std::to_string(key.first) + ", " + std::to_string(key.second) + ")");
            }
            return it->second;
        }
    }
    throw InvalidArgument("CouplingProfile::coupling: unknown kind");
}

nlohmann::json CouplingProfile::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case Kind::Homogeneous: j["kind"] = "homogeneous"; break;
        case Kind::Polynomial:  j["kind"] = "polynomial"; break;
        case Kind::Exponential: j["kind"] = "exponential"; break;
        case Kind::Explicit:    j["kind"] = "explicit"; break;
    }
    j["J"] = j_;
    if (kind_ == Kind::Polynomial) j["alpha"] = alpha_;
    if (kind_ == Kind::Explicit) {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& [pair, g] : table_) {
            entries.push_back({{"j", pair.first}, {"k", pair.second}, {"g", g}});
        }
        j["table"] = std::move(entries);
    }
    return j;
}

CouplingProfile CouplingProfile::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const double J = j.value("J", 1.0);
    if (kind == "homogeneous") return homogeneous(J);
    if (kind == "polynomial") return polynomial(J, j.at("alpha").get<double>());
    if (kind == "exponential") return exponential(J);
    if (kind == "explicit") {
        std::map<std::pair<int, int>, double> table;
        for (const auto& e : j.at("table")) {
            table[{e.at("j").get<int>(), e.at("k").get<int>()}] = e.at("g").get<double>();
        }
        return explicit_table(std::move(table));
    }
    throw ConfigError("CouplingProfile::from_json: unknown kind '" + kind + "'");
}

std::vector<std::pair<int, int>> topology_pairs(int n_qubits, Topology topology) {
    if (n_qubits < 2) {
        throw InvalidArgument("topology_pairs: need at least 2 qubits, got " +
                              std::to_string(n_qubits));
    }
    std::vector<std::pair<int, int>> pairs;
    if (topology == Topology::NearestNeighbor) {
        for (int j = 0; j + 1 < n_qubits; ++j) pairs.emplace_back(j, j + 1);
    } else {
        for (int j = 0; j < n_qubits; ++j) {
            for (int k = j + 1; k < n_qubits; ++k) pairs.emplace_back(j, k);
        }
    }
    return pairs;
}

namespace {

PauliWord two_site_word(int n_qubits, int a, Axis ax_a, int b, Axis ax_b) {
    PauliWord w(n_qubits);
    w.set_axis(a, ax_a);
    w.set_axis(b, ax_b);
    return w;
}

}  // namespace

SpinHamiltonian build_ising(int n_qubits, const CouplingProfile& profile,
                            Topology topology) {
    SpinHamiltonian h(n_qubits);
    for (const auto& [j, k] : topology_pairs(n_qubits, topology)) {
        const double g = profile.coupling(j, k);
        if (!std::isfinite(g)) {
            throw InvalidArgument("build_ising: non-finite coupling for pair (" +
                                  std::to_string(j) + ", " + std::to_string(k) + ")");
        }
        h.add_term(g, two_site_word(n_qubits, j, Axis::Z, k, Axis::Z));
    }
    return h;
}

SpinHamiltonian build_xz_target(int n_qubits, const XZProfiles& profiles) {
    SpinHamiltonian h(n_qubits);
    for (const auto& [j, k] : topology_pairs(n_qubits, Topology::AllToAll)) {
        h.add_term(profiles.xx.coupling(j, k), two_site_word(n_qubits, j, Axis::X, k, Axis::X));
        h.add_term(profiles.xz.coupling(j, k), two_site_word(n_qubits, j, Axis::X, k, Axis::Z));
        h.add_term(profiles.zx.coupling(j, k), two_site_word(n_qubits, j, Axis::Z, k, Axis::X));
        h.add_term(profiles.zz.coupling(j, k), two_site_word(n_qubits, j, Axis::Z, k, Axis::Z));
    }
    return h;
}

SpinHamiltonian build_xz_target(int n_qubits, const CouplingProfile& all_channels) {
    return build_xz_target(n_qubits, XZProfiles{all_channels, all_channels,
                                                all_channels, all_channels});
}

SpinHamiltonian build_seeded_xz_target(int n_qubits, double j, std::uint64_t seed) {
    CounterRng rng(seed, 0x787a, 0);
    SpinHamiltonian h(n_qubits);
    for (const auto& [a, b] : topology_pairs(n_qubits, Topology::AllToAll)) {
        for (Axis ax_a : {Axis::X, Axis::Z}) {
            for (Axis ax_b : {Axis::X, Axis::Z}) {
                h.add_term(rng.uniform(-j, j),
                           two_site_word(n_qubits, a, ax_a, b, ax_b));
            }
        }
    }
    return h;
}

namespace {

// Enumerates every contiguous window of m in [2, max_weight] sites with X/Y/Z
// on each site, in a fixed order (weight, then window start, then axes
// counting X->Y->Z with the rightmost site fastest), feeding each word to fn.
template <typename Fn>
void for_each_window_word(int n_qubits, int max_weight, Fn&& fn) {
    if (max_weight < 2) {
        throw InvalidArgument("m-body enumeration: max weight must be >= 2");
    }
    if (n_qubits < max_weight) {
        throw InvalidArgument("m-body enumeration: need at least " +
                              std::to_string(max_weight) + " qubits, got " +
                              std::to_string(n_qubits));
    }
    constexpr Axis kAxes[3] = {Axis::X, Axis::Y, Axis::Z};
    for (int m = 2; m <= max_weight; ++m) {
        long combos = 1;
        for (int i = 0; i < m; ++i) combos *= 3;
        for (int start = 0; start + m <= n_qubits; ++start) {
            for (long c = 0; c < combos; ++c) {
                PauliWord w(n_qubits);
                long rem = c;
                for (int site = m - 1; site >= 0; --site) {
                    w.set_axis(start + site, kAxes[rem % 3]);
                    rem /= 3;
                }
                fn(std::move(w));
            }
        }
    }
}

}  // namespace

std::vector<PauliWord> window_word_family(int n_qubits, int max_weight) {
    std::vector<PauliWord> family;
    for_each_window_word(n_qubits, max_weight,
                         [&](PauliWord w) { family.push_back(std::move(w)); });
    return family;
}

SpinHamiltonian build_mbody_target(int n_qubits, int max_weight, double j,
                                   std::uint64_t seed) {
    CounterRng rng(seed, 0x4b6f, 0);
    SpinHamiltonian h(n_qubits);
    for_each_window_word(n_qubits, max_weight, [&](PauliWord w) {
        h.add_term(rng.uniform(-j, j), w);
    });
    return h;
}

SpinHamiltonian build_mbody_target_explicit(int n_qubits, int max_weight,
                                            const std::map<std::string, double>& coeffs) {
    SpinHamiltonian h(n_qubits);
    std::size_t used = 0;
    for_each_window_word(n_qubits, max_weight, [&](PauliWord w) {
        const auto it = coeffs.find(w.str());
        if (it != coeffs.end()) {
            h.add_term(it->second, w);
            ++used;
        }
    });
    if (used != coeffs.size()) {
        throw InvalidArgument("build_mbody_target_explicit: " +
                              std::to_string(coeffs.size() - used) +
                              " coefficient(s) name words outside the window family");
    }
    return h;
}

}  // namespace daqc
