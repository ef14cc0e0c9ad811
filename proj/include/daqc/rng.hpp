#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace daqc {

// Counter-based generator: draw i is a pure function of (key, i), so streams
// keyed by (seed, run, block) are reproducible across platforms and
// independent of how many values other streams consumed. Normal variates use
// Box-Muller on the raw uniforms; std::normal_distribution is avoided on
// purpose since its algorithm is implementation-defined.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream_a = 0,
                        std::uint64_t stream_b = 0) {
        key_ = mix64(seed + kGolden);
        key_ = mix64(key_ ^ mix64(stream_a + 2 * kGolden));
        key_ = mix64(key_ ^ mix64(stream_b + 3 * kGolden));
    }

    // Uniform on [0, 1) from the top 53 bits of the next counter output.
    double uniform() {
        const std::uint64_t bits = mix64(key_ + (++counter_) * kGolden);
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Mean zero, standard deviation sigma. Always consumes two uniforms.
    double normal(double sigma) {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
        const double u2 = uniform();
        return sigma * std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace daqc
