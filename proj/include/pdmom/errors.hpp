#pragma once

#include <stdexcept>
#include <string>

namespace pdmom {

/// Base class for all pdmom errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse failure in one of the text formats.
struct ParseError : Error {
    using Error::Error;
};

/// An operation received the zero polynomial where a nonzero one is required.
struct ZeroPolynomialError : Error {
    using Error::Error;
};

/// Argument outside the documented range.
struct RangeError : Error {
    using Error::Error;
};

/// Leading recurrence coefficient q_alpha is identically zero.
struct DegenerateLeadingError : Error {
    using Error::Error;
};

/// p_n vanishes at the node; the jump <-> power-sum map is not invertible there.
struct SingularNodeError : Error {
    using Error::Error;
};

/// Linear system is singular (e.g. repeated nodes in a Vandermonde solve).
struct SingularSystemError : Error {
    using Error::Error;
};

/// Condition estimate of a floating-point solve exceeded the configured limit.
struct IllConditionedError : Error {
    using Error::Error;
};

/// Sample sequence is not consistent with a power-sum model of the stated shape.
struct WrongModelOrderError : Error {
    using Error::Error;
};

/// Moment sequence too short for the requested index range.
struct InsufficientMomentsError : Error {
    using Error::Error;
};

/// Seed data does not cover the moments the first recurrence instance touches.
struct InsufficientSeedError : Error {
    using Error::Error;
};

/// q_alpha(k) = 0 for an index k the forward generation must divide by.
struct LeadingZeroError : Error {
    using Error::Error;
};

/// Operation requires explicit polynomial pieces.
struct NonPolynomialPieceError : Error {
    using Error::Error;
};

/// Series expansion point is a root of the leading coefficient.
struct SingularExpansionPointError : Error {
    using Error::Error;
};

/// Truncated series did not reach the requested accuracy.
struct AccuracyNotMetError : Error {
    using Error::Error;
};

}  // namespace pdmom
