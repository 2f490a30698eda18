#ifndef LUCELAB_ERRORS_HPP
#define LUCELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lucelab {

// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyPresentation : Error {
    EmptyPresentation() : Error("presentation must contain at least one option") {}
};

struct UnknownOption : Error {
    explicit UnknownOption(int id, int k)
        : Error("option id " + std::to_string(id) + " out of range for K=" + std::to_string(k)) {}
};

struct OptionNotPresented : Error {
    explicit OptionNotPresented(int id)
        : Error("option " + std::to_string(id) + " is not in the presentation") {}
};

struct DegeneratePresentation : Error {
    DegeneratePresentation() : Error("all presented options have zero preference mass") {}
};

struct InvalidPrior : Error {
    explicit InvalidPrior(const std::string& what) : Error(what) {}
};

struct BoundaryDensity : Error {
    BoundaryDensity() : Error("density evaluated at a simplex boundary with a divergent exponent") {}
};

struct SamplerDivergence : Error {
    explicit SamplerDivergence(const std::string& what) : Error(what) {}
};

struct InfeasibleConstraint : Error {
    explicit InfeasibleConstraint(const std::string& what) : Error(what) {}
};

struct OracleTooLarge : Error {
    explicit OracleTooLarge(int k) : Error("grid oracle supports K<=4, got K=" + std::to_string(k)) {}
};

struct NumericUnderflow : Error {
    explicit NumericUnderflow(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace lucelab

#endif  // LUCELAB_ERRORS_HPP
