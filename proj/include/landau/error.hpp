#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace landau {

enum class ErrorKind {
    InvalidArgument,
    NonMonic,
    ZeroDiscriminant,
    RationalRootFound,
    IrregularPrime,
    FieldMismatch,
    DomainMismatch,
    NonUnitLeadingValue,
    UnknownFunctionId,
    CapacityExceeded,
    MemberNormExceedsX,
    NoPairFound,
    SelectionFailed,
    ConstructionInfeasible,
    Overflow,
    CacheFormat,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every library failure is reported through this type; `kind()` lets
/// callers (and the CLI exit-code mapping) dispatch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace landau
