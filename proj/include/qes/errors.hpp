#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qes {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Errors tied to a position on the real line.
class LocatedError : public Error {
public:
    LocatedError(const std::string& what, double x)
        : Error(what + " at x = " + format_location(x)), x_(x) {}
    double location() const noexcept { return x_; }

private:
    static std::string format_location(double x);
    double x_;
};

class DomainError : public LocatedError {
public:
    using LocatedError::LocatedError;
};

class NegativeDiscriminant : public LocatedError {
public:
    using LocatedError::LocatedError;
};

class PatchFailure : public LocatedError {
public:
    using LocatedError::LocatedError;
};

class UnremovablePole : public LocatedError {
public:
    using LocatedError::LocatedError;
};

class VplusPole : public LocatedError {
public:
    using LocatedError::LocatedError;
};

class BranchInconsistency : public LocatedError {
public:
    using LocatedError::LocatedError;
};

class QuadratureNonconvergence : public LocatedError {
public:
    using LocatedError::LocatedError;
};

class ReferenceDenominatorZero : public LocatedError {
public:
    using LocatedError::LocatedError;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

class AmbiguousNode : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace qes
