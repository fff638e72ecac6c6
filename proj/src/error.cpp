#include "landau/error.hpp"

namespace landau {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NonMonic: return "NonMonic";
        case ErrorKind::ZeroDiscriminant: return "ZeroDiscriminant";
        case ErrorKind::RationalRootFound: return "RationalRootFound";
        case ErrorKind::IrregularPrime: return "IrregularPrime";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::DomainMismatch: return "DomainMismatch";
        case ErrorKind::NonUnitLeadingValue: return "NonUnitLeadingValue";
        case ErrorKind::UnknownFunctionId: return "UnknownFunctionId";
        case ErrorKind::CapacityExceeded: return "CapacityExceeded";
        case ErrorKind::MemberNormExceedsX: return "MemberNormExceedsX";
        case ErrorKind::NoPairFound: return "NoPairFound";
        case ErrorKind::SelectionFailed: return "SelectionFailed";
        case ErrorKind::ConstructionInfeasible: return "ConstructionInfeasible";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::CacheFormat: return "CacheFormat";
    }
    return "Unknown";
}

}  // namespace landau
