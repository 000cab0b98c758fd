#pragma once

#include <stdexcept>
#include <string>

namespace qnlo {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The requested operation needs a larger Fock truncation than provided.
struct TruncationTooSmall : Error {
    using Error::Error;
};

/// Operand dimensions are inconsistent.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// A closed-form routine valid only at delta = 0 was called with delta != 0.
struct NonzeroDelta : Error {
    using Error::Error;
};

/// The weak-coupling approximate state is only defined for real alpha.
struct ComplexAlphaUnsupported : Error {
    using Error::Error;
};

/// LAPACK eigensolve did not converge.
struct EigensolveFailure : Error {
    using Error::Error;
};

/// Guard-band population exceeded the tolerated tail during a run.
/// Fatal by design: the caller must enlarge n_max and rerun.
struct TruncationBreached : Error {
    using Error::Error;
};

/// Adaptive integrator could not meet the tolerance with any viable step.
struct StepSizeUnderflow : Error {
    using Error::Error;
};

struct NonHermitianInput : Error {
    using Error::Error;
};

/// Wigner grid spacing too coarse to resolve interference fringes.
struct GridTooCoarse : Error {
    using Error::Error;
};

struct GridMismatch : Error {
    using Error::Error;
};

/// Configuration file or CLI argument problem; message names the field.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace qnlo
