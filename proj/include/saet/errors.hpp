#pragma once

#include <stdexcept>
#include <string>

namespace saet {

enum class ErrorKind {
    DegenerateSimplex,
    BadGlue,
    NotInClosure,
    EmptyGerm,
    NotCommonFace,
    CertificationFailure,
    InPlane,
    NotAFace,
    BadOrder,
    OutOfDomain,
    RecursionDepthExceeded,
    HypothesisViolated,
    ConflictFound,
    Unbounded,
    NotEventuallyInDomain,
    PoleAtZero,
    LimitOutsideClosure,
    GermInBadSet,
    PreconditionViolated,
    SameApex,
    GermNotInTau,
    ParseError,
    DimensionTooHigh,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace saet
