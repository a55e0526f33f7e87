#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bge {

/// An iterative procedure or truncated series stopped before reaching its
/// tolerance. Carries the best value found so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial_value,
                   std::size_t terms_used, double error_estimate)
      : std::runtime_error(what),
        partial_value_(partial_value),
        terms_used_(terms_used),
        error_estimate_(error_estimate) {}

  double partial_value() const noexcept { return partial_value_; }
  std::size_t terms_used() const noexcept { return terms_used_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double partial_value_;
  std::size_t terms_used_;
  double error_estimate_;
};

}  // namespace bge
