#pragma once

#include <stdexcept>
#include <string>

namespace daqc {

// Base class for all library errors so callers can catch daqc failures
// separately from generic std exceptions.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// Compiler-side failures -----------------------------------------------------

// Generator set cannot realize the requested couplings (singular system).
struct SingularGeneratorSet : Error {
    explicit SingularGeneratorSet(const std::string& msg) : Error(msg) {}
};

// A resource coupling is zero on a pair where the target needs one.
struct ZeroResourceCoupling : Error {
    explicit ZeroResourceCoupling(const std::string& msg) : Error(msg) {}
};

// Negative block times could not be mapped back into physical times.
struct NoRemediation : Error {
    explicit NoRemediation(const std::string& msg) : Error(msg) {}
};

// Per-pair 4x4 angle system is singular or too ill-conditioned to use.
struct SingularPairSystem : Error {
    explicit SingularPairSystem(const std::string& msg) : Error(msg) {}
};

// Least-squares reconstruction cannot reach the target coefficients.
struct RankDeficient : Error {
    explicit RankDeficient(const std::string& msg) : Error(msg) {}
};

// Executor-side failures -----------------------------------------------------

// Pulse width does not fit between two rotation layers.
struct PulseOverlap : Error {
    explicit PulseOverlap(const std::string& msg) : Error(msg) {}
};

// A layer gate has no usable generator (e.g. the matrix is not unitary).
struct GeneratorUndefined : Error {
    explicit GeneratorUndefined(const std::string& msg) : Error(msg) {}
};

// Config / IO failures --------------------------------------------------------

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace daqc
