#include <gtest/gtest.h>

#include <cmath>

#include "bge/quadrature.hpp"
#include "bge/specfun.hpp"

namespace q = bge::quadrature;

TEST(GaussKronrod, PolynomialAndOscillatory) {
  const auto r = q::gauss_kronrod([](double x) { return x * x * x - 2.0 * x; }, -1.0, 3.0, 1e-14, 1e-14);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 12.0, 1e-12);
  const auto s = q::gauss_kronrod([](double x) { return std::cos(30.0 * x); }, 0.0, 2.0, 1e-13, 1e-13);
  EXPECT_NEAR(s.value, std::sin(60.0) / 30.0, 1e-12);
}

TEST(GaussKronrod, HalfLine) {
  const auto r = q::gauss_kronrod_half_line([](double x) { return std::exp(-x) * x; }, 0.0, 1e-13, 1e-13);
  EXPECT_NEAR(r.value, 1.0, 1e-11);
  const auto s = q::gauss_kronrod_half_line([](double x) { return 1.0 / (x * x); }, 1.0, 1e-13, 1e-13);
  EXPECT_NEAR(s.value, 1.0, 1e-11);
}

TEST(TanhSinh, EndpointSingularities) {
  // ∫ x^{-1/2} (1-x)^{-1/2} = π
  const auto r = q::tanh_sinh_unit([](double x, double c) { return 1.0 / std::sqrt(x * c); }, 1e-13,
                                   1e-13, 12);
  EXPECT_NEAR(r.value, bge::specfun::kPi, 1e-10);
  // ∫ log(x) log(1-x) = 2 - π²/6
  const auto s = q::tanh_sinh_unit([](double x, double c) { return std::log(x) * std::log(c); },
                                   1e-13, 1e-13, 12);
  EXPECT_NEAR(s.value, 2.0 - bge::specfun::kPi * bge::specfun::kPi / 6.0, 1e-11);
}

TEST(TanhSinh, HalfLine) {
  const auto r = q::tanh_sinh_half_line([](double x) { return std::exp(-x) / std::sqrt(x); }, 0.0,
                                        1e-13, 1e-13, 12);
  EXPECT_NEAR(r.value, std::sqrt(bge::specfun::kPi), 1e-10);
}
