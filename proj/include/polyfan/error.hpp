#pragma once

#include <stdexcept>
#include <string>

namespace polyfan {

enum class ErrorKind {
    ZeroVector,
    DimensionMismatch,
    NotInDual,
    NotSimplicial,
    NotAFace,
    NotFaceClosed,
    BadIntersection,
    Empty,
    NotInFan,
    InvalidCenter,
    LinealityMismatch,
    BadPrerequisites,
    BadE,
    EmptyX,
    Unbounded,
    NegativeWeight,
    ZeroPolynomial,
    TooFewVariables,
    NotWeierstrass,
    HeightZero,
    IterationCapExceeded,
    NotHSimple,
    BadSupport,
    InvalidContext,
    NotAHeight,
    InconsistentGamma,
    HeightNotDecreased,
    ParseError,
    NotZSimple,
    Internal,
};

const char* to_string(ErrorKind k);

// Every failure raised by the library carries a kind so callers (and the CLI
// exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace polyfan
