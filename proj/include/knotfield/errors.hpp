#pragma once

#include <stdexcept>
#include <string>

namespace knotfield {

enum class ErrorKind {
    NonPositive,
    NotCoprime,
    NotInitialTime,
    NumericOverflow,
    StepTooSmall,
    ZeroWaveVector,
    GridTooCoarse,
    DomainTooSmall,
    NoConvergence,
    UnsupportedDegree,
    NullFieldRegion,
    NotClosed,
    AmbiguousWinding,
    CurvesTooClose,
    ZeroIntensity,
    IoError,
    InvalidConfig,
    UsageError,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace knotfield
