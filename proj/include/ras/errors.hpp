#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ras {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// |det g| fell to or below the nondegeneracy threshold.
class DegenerateMetric : public Error {
public:
    using Error::Error;
};

/// A point or parameter left the validity domain (vanishing conformal
/// factor, non-positive warping function, query outside a cumulative table).
class DomainViolation : public Error {
public:
    using Error::Error;
};

/// A function was evaluated outside its mathematical domain, e.g. ln of a negative.
class EvalDomainError : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Caller broke a documented precondition (mismatched dimensions, m = 0, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

} // namespace ras
