#pragma once

#include <stdexcept>
#include <string>

namespace vlp {

/// Input outside the mathematical domain of an operation (coincident
/// positions, fractional power of a negative base, t = 0 where the decay rate
/// must be identifiable, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed or inconsistent configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A matrix that has to be inverted is singular or too badly conditioned.
class SingularityError : public std::runtime_error {
public:
    SingularityError(const std::string& what, double condition_number, int rank = -1)
        : std::runtime_error(what), condition_number_(condition_number), rank_(rank) {}

    double condition_number() const noexcept { return condition_number_; }
    /// Numerical rank, or -1 when it was not computed.
    int rank() const noexcept { return rank_; }

private:
    double condition_number_;
    int rank_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace vlp
