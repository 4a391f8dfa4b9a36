#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ringstar {

// Error taxonomy shared by the whole library. Operations document which of
// these they raise; everything derives from Error for catch-all handling.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Zero (or unit) input where a nonzero (or non-unit) value is required.
struct DegenerateInput : Error {
    using Error::Error;
};

// Zero modulus in a residue computation.
struct DegenerateModulus : DegenerateInput {
    explicit DegenerateModulus(const std::string& what = "zero modulus")
        : DegenerateInput(what) {}
};

// A modulus fails to divide the requested refinement level.
struct RefinementMismatch : Error {
    using Error::Error;
};

// An affine image escapes the ring.
struct NotIntegral : Error {
    using Error::Error;
};

// Operands belong to different rings.
struct RingMismatch : Error {
    using Error::Error;
};

// Generic precondition violation on an operation's domain.
struct DomainError : Error {
    using Error::Error;
};

struct InvalidProjectionFamily : Error {
    using Error::Error;
};

struct WitnessNotFound : Error {
    using Error::Error;
};

struct IncompatibleFamily : Error {
    using Error::Error;
};

struct UnsupportedRing : Error {
    using Error::Error;
};

struct DivergentSeries : Error {
    using Error::Error;
};

// Syntax error with a 0-based byte offset into the input text.
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " at column " + std::to_string(pos)), position(pos) {}
};

} // namespace ringstar
