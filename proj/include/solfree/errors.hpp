#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace solfree {

// Base of every domain error raised by the library. `kind()` is the stable
// machine-readable name printed by the CLI (`error: <kind>: <message>`).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    [[nodiscard]] std::string_view kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define SOLFREE_DEFINE_ERROR(Name)                                              \
    class Name : public ::solfree::Error {                                      \
    public:                                                                     \
        explicit Name(const std::string& what) : ::solfree::Error(#Name, what) {} \
    }

// equations
SOLFREE_DEFINE_ERROR(SyntaxError);
SOLFREE_DEFINE_ERROR(ArityError);
SOLFREE_DEFINE_ERROR(ZeroCoefficient);
SOLFREE_DEFINE_ERROR(InvalidWitness);
SOLFREE_DEFINE_ERROR(OverflowError);

// field / cayley
SOLFREE_DEFINE_ERROR(NotPrime);
SOLFREE_DEFINE_ERROR(ZeroGenerator);
SOLFREE_DEFINE_ERROR(EmptyGenerators);
SOLFREE_DEFINE_ERROR(BadInterval);
SOLFREE_DEFINE_ERROR(NotAClique);

// solution search and counting
SOLFREE_DEFINE_ERROR(CoefficientVanishes);
SOLFREE_DEFINE_ERROR(NumericalResolutionError);
SOLFREE_DEFINE_ERROR(ArityTooLarge);

// rainbow paths
SOLFREE_DEFINE_ERROR(BudgetExceeded);
SOLFREE_DEFINE_ERROR(FormatError);
SOLFREE_DEFINE_ERROR(InvalidSystem);

// witness pipeline
SOLFREE_DEFINE_ERROR(NotDegenerate);
SOLFREE_DEFINE_ERROR(AlphaUndecided);

// constructs
SOLFREE_DEFINE_ERROR(ParameterError);
SOLFREE_DEFINE_ERROR(FieldTooSmall);
SOLFREE_DEFINE_ERROR(NotTriangleFree);
SOLFREE_DEFINE_ERROR(GirthTooSmall);
SOLFREE_DEFINE_ERROR(IntervalEmpty);
SOLFREE_DEFINE_ERROR(SigmaTooLarge);

// density search
SOLFREE_DEFINE_ERROR(CapExceeded);
SOLFREE_DEFINE_ERROR(NoFeasiblePoint);

// harness
SOLFREE_DEFINE_ERROR(ConfigError);

#undef SOLFREE_DEFINE_ERROR

}  // namespace solfree
