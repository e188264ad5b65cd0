#pragma once

#include <stdexcept>
#include <string>

namespace nmc {

enum class ErrorKind {
    Usage,       // bad arguments, mismatched moduli, out-of-range vertices
    Parameter,   // infeasible construction parameters
    Parse,       // malformed input files or spec strings
    Validation,  // input parsed but violates an invariant (asymmetry, irregularity)
    Capability,  // operation not supported at this size / on this backend
    Sampling,    // rejection budget exhausted
    Arithmetic,  // e.g. inversion of zero
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct UsageError : Error {
    explicit UsageError(const std::string& w) : Error(ErrorKind::Usage, w) {}
};
struct ParameterError : Error {
    explicit ParameterError(const std::string& w) : Error(ErrorKind::Parameter, w) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(ErrorKind::Validation, w) {}
};
struct CapabilityError : Error {
    explicit CapabilityError(const std::string& w) : Error(ErrorKind::Capability, w) {}
};
struct SamplingError : Error {
    explicit SamplingError(const std::string& w) : Error(ErrorKind::Sampling, w) {}
};
struct InversionOfZero : Error {
    InversionOfZero() : Error(ErrorKind::Arithmetic, "inverse of zero in F_p") {}
};

/// Process exit code for an error: 2 usage, 3 validation, 4 capability, 1 otherwise.
inline int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Usage:
    case ErrorKind::Parameter:
    case ErrorKind::Parse:
        return 2;
    case ErrorKind::Validation:
        return 3;
    case ErrorKind::Capability:
        return 4;
    default:
        return 1;
    }
}

}  // namespace nmc
