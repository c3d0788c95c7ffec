#ifndef K0LAT_ERROR_HPP
#define K0LAT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace k0lat {

enum class ErrorKind {
    InvalidInput,
    DimensionMismatch,
    NotAssociative,
    BadUnit,
    MismatchedOrders,
    NotPrime,
    NotSurjective,
    NotUnit,
    KernelInfinite,
    NotSplit,
    TooLarge,
    SearchBoundExceeded,
    SingularGram,
    NotFiniteIndex,
    WeightMismatch,
};

std::string_view to_string(ErrorKind kind);

/* Every library failure is reported through this type; the kind drives the
 * CLI exit code. */
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace k0lat

#endif
