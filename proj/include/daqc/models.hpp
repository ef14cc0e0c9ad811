#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "daqc/hamiltonian.hpp"

namespace daqc {

// Distance-law (or explicit per-pair) coupling strengths for spin chains.
class CouplingProfile {
public:
    enum class Kind { Homogeneous, Polynomial, Exponential, Explicit };

    static CouplingProfile homogeneous(double j);
    // g(d) = J / d^alpha. physical_ion restricts alpha to (0, 3), the range
    // realizable by trapped-ion dipolar interactions.
    static CouplingProfile polynomial(double j, double alpha, bool physical_ion = false);
    // g(d) = J * exp(-(d-1)^2)
    static CouplingProfile exponential(double j);
    // Arbitrary per-pair table; keys are 0-based (j, k) with j < k.
    static CouplingProfile explicit_table(std::map<std::pair<int, int>, double> table);

    Kind kind() const { return kind_; }
    double j() const { return j_; }
    double alpha() const { return alpha_; }

    // Coupling for 0-based qubits (a, b), a != b. Distance is |a - b|.
    double coupling(int a, int b) const;

    nlohmann::json to_json() const;
    static CouplingProfile from_json(const nlohmann::json& j);

private:
    CouplingProfile() = default;
    Kind kind_ = Kind::Homogeneous;
    double j_ = 1.0;
    double alpha_ = 0.0;
    std::map<std::pair<int, int>, double> table_;
};

enum class Topology { AllToAll, NearestNeighbor };

// Ordered interaction pairs (j < k, 0-based). All-to-all enumerates
// (0,1), (0,2), ..., (0,N-1), (1,2), ...; nearest-neighbor keeps |j-k| = 1.
std::vector<std::pair<int, int>> topology_pairs(int n_qubits, Topology topology);

// Two-body Ising Hamiltonian: sum over pairs of g_jk Z_j Z_k.
SpinHamiltonian build_ising(int n_qubits, const CouplingProfile& profile,
                            Topology topology = Topology::AllToAll);

// General two-body XZ-class target: per pair, the four words XX, XZ, ZX, ZZ
// with channel-specific coupling profiles, all-to-all.
struct XZProfiles {
    CouplingProfile xx, xz, zx, zz;
};
SpinHamiltonian build_xz_target(int n_qubits, const XZProfiles& profiles);
SpinHamiltonian build_xz_target(int n_qubits, const CouplingProfile& all_channels);

// XZ-class target with every channel coefficient drawn uniform in [-j, j]
// from a deterministic seeded stream.
SpinHamiltonian build_seeded_xz_target(int n_qubits, double j, std::uint64_t seed);

// Every contiguous window of m in [2, max_weight] sites with X/Y/Z on each
// site, in a fixed order (weight, then window start, then axes counting
// X -> Y -> Z with the rightmost site fastest). This is the coordinate basis
// shared by the m-body target builders and the m-body compiler.
std::vector<PauliWord> window_word_family(int n_qubits, int max_weight);

// Nearest-neighbor-supported M-body target: for every window of m contiguous
// sites (2 <= m <= max_weight) and every choice of X/Y/Z on each site of the
// window, one term. Coefficients are uniform in [-j, j] from a seeded stream.
SpinHamiltonian build_mbody_target(int n_qubits, int max_weight, double j,
                                   std::uint64_t seed);

// Same window enumeration with caller-supplied coefficients keyed by word.
SpinHamiltonian build_mbody_target_explicit(int n_qubits, int max_weight,
                                            const std::map<std::string, double>& coeffs);

}  // namespace daqc
