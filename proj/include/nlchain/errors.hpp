// Error taxonomy for the nonlocal-chain library.
//
// Numerical failures (truncation/quadrature/synthesis/stability) are kept
// distinct from bad input so the CLI can map them to different exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace nlchain {

// base class for all library-specific failures
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// a characteristic-function term of order m = 0 (or below) would break
// translational invariance: f(0) = 0 must hold structurally
struct TranslationalInvarianceViolation : Error {
    using Error::Error;
};

// f(lambda) fails to stay positive on the admissibility window (0, 4]
struct AdmissibilityError : Error {
    using Error::Error;
};

// series truncation of the Gaussian family is too short for the requested
// accuracy (a-posteriori tail bound violated)
struct TruncationError : Error {
    using Error::Error;
};

// inverse DFT of an eigenvalue sequence produced a first row with
// non-negligible imaginary parts
struct SynthesisError : Error {
    using Error::Error;
};

// a quadrature did not converge under doubling of resolution/range
struct QuadratureError : Error {
    using Error::Error;
};

// truncated continuum model is elastically unstable, or an integrator was
// asked to run outside its stability region
struct StabilityError : Error {
    using Error::Error;
};

// malformed configuration input (CLI side)
struct ConfigError : Error {
    using Error::Error;
};

} // namespace nlchain
