#include "bge/specfun.hpp"

#include <math.h>

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bge/errors.hpp"

namespace bge::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string(what) + " must be positive and finite");
  }
}

// sin(πx) with exact zeros at the integers.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  if (r <= 0.5) return std::sin(kPi * r);
  if (r <= 1.5) return std::sin(kPi * (1.0 - r));
  return std::sin(kPi * (r - 2.0));
}

// Modified Lentz evaluation of the continued fraction for I_y(a, b); valid
// and fast for y < (a + 1) / (a + b + 2).
double beta_continued_fraction(double y, double a, double b) {
  constexpr int kMaxIter = 50000;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * y / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double dm = m;
    const double m2 = 2.0 * dm;
    double aa = dm * (b - dm) * y / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + dm) * (qab + dm) * y / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 2.0 * kEps) return h;
  }
  throw ConvergenceError("incomplete beta continued fraction did not converge", h,
                         kMaxIter, std::numeric_limits<double>::quiet_NaN());
}

// Bernoulli numbers B_2, B_4, ..., B_30.
constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

constexpr double kPolygammaShift = 6.0;

// Asymptotic expansion of ψ⁽ᵏ⁾ for x >= kPolygammaShift.
double polygamma_asymptotic(double x, int k) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  if (k == 0) {
    double sum = 0.0;
    double pw = inv2;
    for (std::size_t n = 1; n <= kBernoulli.size(); ++n) {
      const double term = kBernoulli[n - 1] / (2.0 * static_cast<double>(n)) * pw;
      sum += term;
      if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
      pw *= inv2;
    }
    return std::log(x) - 0.5 * inv - sum;
  }
  // (-1)^{k+1} [ (k-1)!/x^k + k!/(2 x^{k+1}) + Σ B_2n (2n+k-1)!/((2n)! x^{2n+k}) ]
  double kfact_m1 = 1.0;
  for (int i = 2; i < k; ++i) kfact_m1 *= i;
  const double kfact = kfact_m1 * k;
  const double xk = std::pow(x, k);
  double sum = kfact_m1 / xk + kfact / (2.0 * xk * x);
  double pw = 1.0 / (xk * x * x);  // x^{-(2n+k)} for n = 1
  for (std::size_t n = 1; n <= kBernoulli.size(); ++n) {
    // (2n+k-1)! / (2n)! = (2n+1)(2n+2)...(2n+k-1)
    double ratio = 1.0;
    for (int i = 1; i <= k - 1; ++i) ratio *= static_cast<double>(2 * n + i);
    const double term = kBernoulli[n - 1] * ratio * pw;
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    pw *= inv2;
  }
  return (k % 2 == 1) ? sum : -sum;
}

}  // namespace

double log1mexp(double z) {
  if (z > 0.0) throw std::domain_error("log1mexp: argument must be <= 0");
  return (z > -0.6931471805599453) ? std::log(-std::expm1(z)) : std::log1p(-std::exp(z));
}

double stirling_correction(double x) {
  constexpr std::array<double, 8> c = {
      1.0 / 12.0,         -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double sum = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) sum = sum * inv2 + *it;
  return sum * inv;
}

double log_gamma(double x) {
  require_positive(x, "log_gamma argument");
  if (x < 10.0) {
    int sign = 0;
    return ::lgamma_r(x, &sign);
  }
  return (x - 0.5) * std::log(x) - x + kLnSqrt2Pi + stirling_correction(x);
}

SignedLogGamma signed_log_gamma(double x) {
  if (!std::isfinite(x)) throw std::domain_error("signed_log_gamma: non-finite argument");
  if (x > 0.0) return {log_gamma(x), 1};
  if (x == std::floor(x)) throw std::domain_error("signed_log_gamma: pole at non-positive integer");
  // Γ(x) Γ(1 - x) = π / sin(πx), with Γ(1 - x) > 0 for x < 0.
  const double s = sin_pi(x);
  return {std::log(kPi) - std::log(std::fabs(s)) - log_gamma(1.0 - x), s > 0.0 ? 1 : -1};
}

double log_gamma_ratio(double x, double d) {
  require_positive(x, "log_gamma_ratio base");
  require_positive(x + d, "log_gamma_ratio shifted argument");
  if (d == 0.0) return 0.0;
  if (x >= 10.0 && x + d >= 10.0) {
    return (x - 0.5) * std::log1p(d / x) + d * std::log(x + d) - d +
           stirling_correction(x + d) - stirling_correction(x);
  }
  return log_gamma(x + d) - log_gamma(x);
}

double log_beta(double a, double b) {
  require_positive(a, "log_beta a");
  require_positive(b, "log_beta b");
  const double p = std::min(a, b);
  const double q = std::max(a, b);
  const double s = p + q;
  if (p >= 10.0) {
    const double corr = stirling_correction(p) + stirling_correction(q) - stirling_correction(s);
    return -0.5 * std::log(q) + kLnSqrt2Pi + corr + (p - 0.5) * std::log(p / s) +
           q * std::log1p(-p / s);
  }
  if (q >= 10.0) {
    const double corr = stirling_correction(q) - stirling_correction(s);
    return log_gamma(p) + corr + p - p * std::log(s) + (q - 0.5) * std::log1p(-p / s);
  }
  return log_gamma(p) + log_gamma(q) - log_gamma(s);
}

double beta(double a, double b) { return std::exp(log_beta(a, b)); }

IncBeta inc_beta(double y, double one_minus_y, double a, double b) {
  require_positive(a, "inc_beta a");
  require_positive(b, "inc_beta b");
  if (!(y >= 0.0 && y <= 1.0) || !(one_minus_y >= 0.0 && one_minus_y <= 1.0)) {
    throw std::domain_error("inc_beta: y must lie in [0, 1]");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (y == 0.0) return {0.0, 1.0, -kInf, 0.0};
  if (one_minus_y == 0.0) return {1.0, 0.0, 0.0, -kInf};

  const double log_front = a * std::log(y) + b * std::log(one_minus_y) - log_beta(a, b);
  IncBeta r{};
  if (y < (a + 1.0) / (a + b + 2.0)) {
    r.log_lower = log_front + std::log(beta_continued_fraction(y, a, b)) - std::log(a);
    r.lower = std::exp(r.log_lower);
    r.upper = 1.0 - r.lower;
    r.log_upper = std::log1p(-r.lower);
  } else {
    r.log_upper = log_front + std::log(beta_continued_fraction(one_minus_y, b, a)) - std::log(b);
    r.upper = std::exp(r.log_upper);
    r.lower = 1.0 - r.upper;
    r.log_lower = std::log1p(-r.upper);
  }
  return r;
}

double inc_beta_ratio(double y, double a, double b) {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("inc_beta_ratio: y must lie in [0, 1]");
  return inc_beta(y, 1.0 - y, a, b).lower;
}

namespace {

// Lower-tail solve of I_y(a, b) = p for p <= 1/2, Newton in log y with a
// maintained bracket and bisection fallback.
BetaQuantile solve_lower_tail(double p, double a, double b) {
  const double log_p = std::log(p);
  const double lbeta = log_beta(a, b);

  double y;
  if (a >= 1.0 && b >= 1.0) {
    const double t = std::sqrt(-2.0 * log_p);
    double x = (2.30753 + 0.27061 * t) / (1.0 + (0.99229 + 0.04481 * t) * t) - t;
    const double al = (x * x - 3.0) / 6.0;
    const double h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0));
    const double w = x * std::sqrt(al + h) / h -
                     (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)) * (al + 5.0 / 6.0 - 2.0 / (3.0 * h));
    y = a / (a + b * std::exp(2.0 * w));
  } else {
    const double lna = std::log(a / (a + b));
    const double lnb = std::log(b / (a + b));
    const double t = std::exp(a * lna) / a;
    const double u = std::exp(b * lnb) / b;
    const double w = t + u;
    if (p < t / w) {
      y = std::exp((std::log(a * w) + log_p) / a);
    } else {
      y = 1.0 - std::exp((std::log(b * w) + std::log1p(-p)) / b);
    }
  }
  if (!(y > 0.0 && y < 1.0) || !std::isfinite(y)) y = 0.5;

  double lo = 0.0;
  double hi = 1.0;
  constexpr int kMaxIter = 400;
  for (int it = 0; it < kMaxIter; ++it) {
    const IncBeta ib = inc_beta(y, 1.0 - y, a, b);
    const double g = ib.log_lower - log_p;
    if (ib.lower < p) {
      lo = y;
    } else {
      hi = y;
    }
    if (std::fabs(g) <= 4.0 * kEps || (hi - lo) <= 2.0 * kEps * y) return {y, 1.0 - y};

    // d log I / d log y = y f(y) / I(y)
    const double log_density = (a - 1.0) * std::log(y) + (b - 1.0) * std::log1p(-y) - lbeta;
    const double slope = std::exp(log_density + std::log(y) - ib.log_lower);
    double next = std::exp(std::log(y) - g / slope);
    if (!(next > lo && next < hi) || !std::isfinite(next)) {
      if (lo > 0.0 && hi / lo > 4.0) {
        next = std::sqrt(lo * hi);
      } else if (lo == 0.0) {
        next = hi * 0.0625;
      } else {
        next = 0.5 * (lo + hi);
      }
    }
    if (next == y) return {y, 1.0 - y};
    y = next;
  }
  throw ConvergenceError("inc_beta_inverse did not converge", y, kMaxIter,
                         std::numeric_limits<double>::quiet_NaN());
}

}  // namespace

BetaQuantile inc_beta_inverse(double p, double q, double a, double b) {
  require_positive(a, "inc_beta_inverse a");
  require_positive(b, "inc_beta_inverse b");
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("inc_beta_inverse: probability must lie in [0, 1]");
  }
  if (p == 0.0) return {0.0, 1.0};
  if (q == 0.0) return {1.0, 0.0};
  if (p <= q) return solve_lower_tail(p, a, b);
  // I_y(a, b) = p  <=>  I_{1-y}(b, a) = q
  const BetaQuantile w = solve_lower_tail(q, b, a);
  return {w.one_minus_y, w.y};
}

double inc_beta_inverse(double p, double a, double b) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("inc_beta_inverse: p must lie in [0, 1]");
  return inc_beta_inverse(p, 1.0 - p, a, b).y;
}

double polygamma(double x, PolygammaOrder order) {
  require_positive(x, "polygamma argument");
  const int k = static_cast<int>(order);
  if (k < 0 || k > 3) throw std::domain_error("polygamma: order must be 0, 1, 2 or 3");

  // ψ⁽ᵏ⁾(x) = ψ⁽ᵏ⁾(x + 1) + (-1)^{k+1} k! / x^{k+1}
  double kfact = 1.0;
  for (int i = 2; i <= k; ++i) kfact *= i;
  const double sign = (k % 2 == 0) ? -1.0 : 1.0;
  double shift = 0.0;
  while (x < kPolygammaShift) {
    shift += sign * kfact / std::pow(x, k + 1);
    x += 1.0;
  }
  return polygamma_asymptotic(x, k) + shift;
}

double gamma_p(double s, double x) {
  require_positive(s, "gamma_p shape");
  if (x < 0.0) throw std::domain_error("gamma_p: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) {
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int n = 0; n < 100000; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * kEps) {
        return sum * std::exp(-x + s * std::log(x) - log_gamma(s));
      }
    }
    throw ConvergenceError("gamma_p series did not converge", sum, 100000, del);
  }
  return 1.0 - gamma_q(s, x);
}

double gamma_q(double s, double x) {
  require_positive(s, "gamma_q shape");
  if (x < 0.0) throw std::domain_error("gamma_q: x must be >= 0");
  if (x == 0.0) return 1.0;
  if (x < s + 1.0) return 1.0 - gamma_p(s, x);
  // Lentz continued fraction.
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) {
      return std::exp(-x + s * std::log(x) - log_gamma(s)) * h;
    }
  }
  throw ConvergenceError("gamma_q continued fraction did not converge", h, 100000,
                         std::numeric_limits<double>::quiet_NaN());
}

double chi_square_survival(double w, int dof) {
  if (dof < 1) throw std::domain_error("chi_square_survival: dof must be >= 1");
  if (w <= 0.0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * w);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  // Acklam's rational approximation followed by one Halley step.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  for (int i = 0; i < 2; ++i) {
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace bge::specfun
