#include "k0lat/error.hpp"

namespace k0lat {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::BadUnit: return "BadUnit";
    case ErrorKind::MismatchedOrders: return "MismatchedOrders";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::KernelInfinite: return "KernelInfinite";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::SearchBoundExceeded: return "SearchBoundExceeded";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::NotFiniteIndex: return "NotFiniteIndex";
    case ErrorKind::WeightMismatch: return "WeightMismatch";
    }
    return "Unknown";
}

}  // namespace k0lat
