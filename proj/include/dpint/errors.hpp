#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace dpint {

/// Raised when an operation is applied outside its mathematical domain
/// (zero denominator, non-prime place, gcd(0, 0), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A truncated series ran out of guaranteed-valid orders.
class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An orbit reached a value from which the recurrence cannot continue
/// (an iterate equal to zero). `index` is the position of the offending iterate.
class SingularOrbitError : public std::runtime_error {
public:
    SingularOrbitError(long index, const std::string& what)
        : std::runtime_error(what + " (index " + std::to_string(index) + ")"), index_(index) {}

    long index() const noexcept { return index_; }

private:
    long index_;
};

/// Evaluation of a rational function at a root of its denominator.
class PoleError : public DomainError {
public:
    PoleError(std::string point, const std::string& what)
        : DomainError(what + " at " + point), point_(std::move(point)) {}

    const std::string& point() const noexcept { return point_; }

private:
    std::string point_;
};

class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t position, const std::string& what)
        : std::invalid_argument(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace dpint
