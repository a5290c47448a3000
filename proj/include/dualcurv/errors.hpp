#pragma once

#include <stdexcept>
#include <string>

namespace dualcurv {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad construction input (non-positive offsets, rank-deficient normals, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Malformed body specification file; message names the offending field.
struct ParseError : Error {
    using Error::Error;
};

// An integrand sample came back NaN or infinite.
struct NonFiniteError : Error {
    using Error::Error;
};

// The graded quadrature hit its grid cap before reaching rel_tol.
struct NoConvergenceError : Error {
    using Error::Error;
};

// Linearly dependent vectors where an independent set was required.
struct RankDeficientError : Error {
    using Error::Error;
};

// Exponent outside the integrable band (-n, 0).
struct NonIntegrableError : Error {
    using Error::Error;
};

// Exact oracles are capped at desk-scale dimensions.
struct DimensionTooLargeError : Error {
    using Error::Error;
};

// Total-measure estimate came out non-positive; signals misuse.
struct DegenerateDenominatorError : Error {
    using Error::Error;
};

}  // namespace dualcurv
