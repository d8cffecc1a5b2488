#pragma once

#include <stdexcept>
#include <string>

namespace llag {

/// Precondition violated by caller-supplied arguments.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A sampler or coupling could not produce a draw (rejection cap hit,
/// series failed to resolve, degenerate weights, non-SPD matrix).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CouplingFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Bound curve requested from records that include censored replicates.
class CensoredError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Error raised inside a replicate, tagged with the replicate index.
class ReplicateError : public std::runtime_error {
 public:
  ReplicateError(std::size_t replicate, const std::string& what)
      : std::runtime_error("replicate " + std::to_string(replicate) + ": " + what),
        replicate_(replicate) {}
  std::size_t replicate() const { return replicate_; }

 private:
  std::size_t replicate_;
};

}  // namespace llag
