#pragma once

#include <cstddef>
#include <functional>

// Numerical integration used by the information matrix, the series tail
// closure and the test oracles.

namespace bge::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) on a finite interval.
Result gauss_kronrod(const std::function<double(double)>& f, double lo, double hi,
                     double abs_tol, double rel_tol, int max_subdivisions = 4000);

/// Gauss-Kronrod on [lo, ∞) after the map x = lo + t / (1 - t).
Result gauss_kronrod_half_line(const std::function<double(double)>& f, double lo,
                               double abs_tol, double rel_tol, int max_subdivisions = 4000);

/// Tanh-sinh quadrature on (0, 1). The integrand is called as f(x, 1 - x)
/// with both arguments accurate to full relative precision, so endpoint
/// singularities at either end can be written without cancellation.
Result tanh_sinh_unit(const std::function<double(double, double)>& f, double abs_tol,
                      double rel_tol, int max_level = 9);

/// Tanh-sinh on [lo, ∞) through x = lo + s / (1 - s).
Result tanh_sinh_half_line(const std::function<double(double)>& f, double lo, double abs_tol,
                           double rel_tol, int max_level = 9);

}  // namespace bge::quadrature
