#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "json.hpp"

#include "daqc/hamiltonian.hpp"
#include "daqc/rotation.hpp"

namespace daqc {

// One evolution window under the base Hamiltonian. The realized unitary is
// exp(+i * sign * duration * H_base); sign -1 marks reversed evolution,
// which only the sudden-switching executor can honor.
struct AnalogBlock {
    double duration = 0.0;  // >= 0
    int sign = +1;          // +1 or -1
};

// Interleaved analog windows and single-qubit rotation layers over one fixed
// base Hamiltonian. The block list describes a single repetition unit (one
// Trotter step for the Trotterized compilers); the whole program is that
// unit applied n_repeats times in sequence.
class Schedule {
public:
    using Block = std::variant<AnalogBlock, RotationLayer>;

    Schedule(SpinHamiltonian base);

    int n_qubits() const { return base_.n_qubits(); }
    const SpinHamiltonian& base() const { return base_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    void add_analog(double duration, int sign = +1);
    void add_layer(RotationLayer layer);

    int n_repeats() const { return n_repeats_; }
    void set_repeats(int r);

    // Composes runs of consecutive rotation layers into single layers and
    // drops exact-identity layers and zero-duration analog blocks.
    void simplify();

    std::size_t analog_count_per_repeat() const;
    std::size_t layer_count_per_repeat() const;
    std::size_t analog_count() const { return analog_count_per_repeat() * n_repeats_; }
    std::size_t layer_count() const { return layer_count_per_repeat() * n_repeats_; }

    double analog_time_per_repeat() const;  // sum of durations
    double total_analog_time() const { return analog_time_per_repeat() * n_repeats_; }

    // Dense unitary of the full program (repeats included), built by pushing
    // basis columns through the block kernels. Small registers only.
    Eigen::MatrixXcd unitary() const;

    nlohmann::ordered_json to_json() const;
    static Schedule from_json(const nlohmann::json& j);

private:
    SpinHamiltonian base_;
    std::vector<Block> blocks_;
    int n_repeats_ = 1;
};

}  // namespace daqc
