#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lomax {

/// Invalid argument to a distribution or sampler routine (negative x, n = 0, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Requested moment does not exist for the given shape.
class UndefinedMomentError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// Problems with observed data: unparsable input, negative values, empty files.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;

    DataError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    /// 1-based line number, 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_ = 0;
};

/// Every observation is zero, so the scale conditional has no mass.
class DegenerateDataError : public DataError {
  public:
    using DataError::DataError;
};

/// The prior/sample-size combination yields an improper posterior.
class ImproperPosteriorError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Malformed sampler or study configuration.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace lomax
