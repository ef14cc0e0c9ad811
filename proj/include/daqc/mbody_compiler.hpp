#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "daqc/hamiltonian.hpp"
#include "daqc/ising_compiler.hpp"
#include "daqc/schedule.hpp"

namespace daqc {

// One layer of commuting X_p X_{p+1} generators. All starts within a layer
// are congruent modulo the stride, so the generator pairs are disjoint.
// Site labels are 1-based like the pair indexing elsewhere.
struct OXXLayer {
    int set_index = 1;           // 1-based offset of the first start
    int stride = 2;              // spacing between generator starts
    std::vector<int> positions;  // starts p; the generator is X_p X_{p+1}
    std::vector<double> phases;  // parallel to positions

    // Sum of phi_p X_p X_{p+1} on an n-qubit register.
    SpinHamiltonian generator(int n_qubits) const;
};

// Generator-set geometry by maximum interaction weight. Weight 4 uses 2
// translationally shifted sets at stride 2 (a bond can meet one generator on
// each side, capping conjugated words at weight 4). Weight 3 uses 3 sets at
// stride 3, so at most one generator touches any bond and words stay at
// weight <= 3. Weight 2 needs no conjugation: one empty set.
int oxx_set_count(int m_body);
int oxx_stride(int m_body);

// Default phase of the generator starting at 1-based position p for phase
// set k in 1..4: positions alternate between 2 pi k / 3 and 2 pi k / 5 in
// blocks of two.
double default_oxx_phase(int position, int phase_set);

// The set_index-th generator set on n_qubits with default phases from phase
// set k. set_index in 1..oxx_set_count(m_body).
OXXLayer make_oxx_layer(int n_qubits, int m_body, int set_index, int phase_set);

// Exact Pauli expansion of e^{+iO} H_zz e^{-iO} (the module-wide conjugation
// sign; see conjugate_by_xx) for the nearest-neighbor ZZ network with bond
// strengths g: bond_strengths[i] couples 0-based qubits (i, i+1). Words that
// anticommute with a generator split into cos(2 phi) / sin(2 phi) branches;
// each bond meets at most two generators, so terms stay on contiguous
// windows of at most 4 sites.
SpinHamiltonian conjugated_block(int n_qubits, const Eigen::VectorXd& bond_strengths,
                                 const OXXLayer& o);

// Sum over generator sets s and phase sets k of conjugated blocks with
// default phases. strengths is packed (set, phase set, bond), bond fastest:
// strengths[(s * phase_sets + k) * (n - 1) + b] with 0-based s, k, b.
SpinHamiltonian assemble_h0(int n_qubits, int m_body, const Eigen::VectorXd& strengths,
                            int phase_sets = 4);

// Contiguous windows of 2..max_weight sites that no term of h has as its
// exact support. Returned as (1-based start, size); empty means every window
// is populated, the precondition for the strength solve to have full reach.
std::vector<std::pair<int, int>> missing_support_windows(const SpinHamiltonian& h,
                                                         int max_weight);

struct MBodyOptions {
    int n_trotter = 1;
    // 0 infers the interaction weight from the target's largest window;
    // explicit values must be in {2, 3, 4} and at least the inferred weight.
    int m_body = 0;
    // Number of default phase sets k = 1..phase_sets. One set leaves the
    // conjugated coefficients locked to fixed trig ratios and the solve rank
    // deficient; the default of four decouples them.
    int phase_sets = 4;
    // Seeds the per-qubit orientations of the rotation-layer axis triples.
    // The default passes the reference reconstruction checks; re-seed if a
    // compile reports RankDeficient for some register size.
    std::uint64_t rotation_seed = 8;
    IsingOptions ising;
};

class MBodyPlan {
  public:
    int n_qubits = 0;
    int m_body = 0;
    int phase_sets = 4;
    bool delegated_pure_zz = false;

    // Unit Bloch vectors, one row (r, s, t) per qubit, one matrix per
    // rotation layer l = 0..3^m_body-1.
    std::vector<Eigen::Matrix<double, Eigen::Dynamic, 3>> rotation_axes;

    // Solved ZZ strengths packed (layer, set, phase set, bond), bond fastest.
    Eigen::VectorXd strengths;

    double residual = 0.0;            // least-squares residual, relative
    int rank = 0;                     // numerical rank of the strength map
    double reconstruction_dev = 0.0;  // coefficient-wise rebuild error
    double series_count = 0.0;        // a(M) N + b(M) closed form
    long long coefficient_count = 0;  // dimension of the target window family
    std::size_t empirical_blocks = 0; // analog blocks per Trotter step

    std::size_t strength_index(int layer, int set, int phase_set, int bond) const;

    nlohmann::ordered_json to_json() const;
};

struct CompiledMBody {
    Schedule schedule;
    MBodyPlan plan;
};

// Synthesizes exp(+i t_f H_target) for a nearest-neighbor target with terms
// on contiguous windows of up to M sites. All rotation angles are fixed up
// front (generator phases and 3^M rotation layers in a factorial design:
// each qubit picks one of three seeded reflection axes by a base-3 digit of
// the layer index), so the map from free ZZ strengths to target Pauli
// coefficients is linear; it is solved by minimum-norm least squares and
// must reach the target to within 1e-8, else RankDeficient suggests
// re-seeding the rotation layers. The
// schedule applies one first-order Trotter step per repeat: for each layer l
// a rotation sandwich around the eight (set, phase set) pieces, each piece
// realized as compiled ZZ evolutions with its generator conjugation built
// from ZZ evolutions wrapped in (X+Z)/sqrt(2) reflection layers. Pure ZZ
// targets bypass all of this and compile exactly.
CompiledMBody compile_mbody(const SpinHamiltonian& target, const SpinHamiltonian& resource,
                            double t_f, const MBodyOptions& opts = {});

// Block-count views for an M-body synthesis on N qubits: the closed-form
// series a(M) N + b(M) with a(M) = (9/4)(3^{M-1} - 3), b(M) = (27/2)(3/2 - M);
// the dimension of the window family sum_m 3^m (N - m + 1) (117 N - 306 at
// M = 4), which the series approximates; and the analog-block count of an
// actually assembled seeded plan. The three disagree by design; they are
// reported side by side.
struct BlockCount {
    double series_formula = 0.0;
    long long coefficient_count = 0;
    std::size_t empirical = 0;

    nlohmann::ordered_json to_json() const;
};
BlockCount count_blocks(int m_body, int n_qubits);

}  // namespace daqc
