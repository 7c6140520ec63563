#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad arguments: wrong dimension, nonprime modulus, unsupported parameters.
struct InvalidArgument : Error {
    using Error::Error;
};

/// q(eta) = 0; the local computations are only defined for anisotropic eta.
struct ZeroQ : InvalidArgument {
    ZeroQ() : InvalidArgument("ZeroQ: q(eta) = 0") {}
};

struct BudgetExceeded : Error {
    using Error::Error;
};

/// Raised when an exact polynomial division leaves a remainder.
/// The remainder is carried as a printable string.
struct InexactDivision : Error {
    std::string remainder;
    explicit InexactDivision(std::string rem)
        : Error("InexactDivision: remainder " + rem), remainder(std::move(rem)) {}
};

struct NotSymmetric : Error {
    using Error::Error;
};

struct NonIntegralResult : Error {
    using Error::Error;
};

struct NonIntegralCoefficient : Error {
    using Error::Error;
};

struct UnsupportedWeight : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct WeightOutOfRange : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct MissingC : Error {
    using Error::Error;
};

struct OddParityUnsupported : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct InsufficientPrecision : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct NonConvergence : Error {
    using Error::Error;
};

}  // namespace siegel
