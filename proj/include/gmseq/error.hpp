#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmseq {

/// Root of every exception thrown by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed polynomial text. `offset()` is the byte offset of the failure.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Operands live in different rings (or fields, or have different arity).
class RingMismatch : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain (unit ideal where a proper
/// ideal is required, non-homogeneous input in a graded workflow, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A configured budget (pair count, exponent width, table size) was exceeded.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

/// The bigraded Hilbert table never became polynomial within the grow cap.
class NonStabilization : public Error {
public:
    NonStabilization(const std::string& what, std::string residuals)
        : Error(what), residuals_(std::move(residuals)) {}

    const std::string& residuals() const noexcept { return residuals_; }

private:
    std::string residuals_;
};

/// Violated internal invariant; always indicates a bug in the engine.
class EngineError : public Error {
public:
    using Error::Error;
};

} // namespace gmseq
