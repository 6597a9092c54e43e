#pragma once

#include <stdexcept>
#include <string>

namespace turnband {

/// Malformed textual input (model specs, space specs, CLI values).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a function or model.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure did not reach its tolerance (quadrature panel
/// budget exhausted, tail cutoff not found, factorization failure).
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate = 0.0)
      : std::runtime_error(what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace turnband
