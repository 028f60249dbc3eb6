#pragma once

#include <stdexcept>
#include <string>

namespace orm {

/// Input that violates a documented invariant. `what()` names the invariant.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& invariant)
        : std::invalid_argument(invariant), invariant_(invariant) {}
    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

/// A numerical procedure could not deliver a result (no bracket, no convergence,
/// non-finite values).
class NumericalError : public std::runtime_error {
public:
    enum class Kind { NoSignChange, MaxIterations, NonFinite, NoBoundState, SeriesCap, Domain };

    NumericalError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace orm
