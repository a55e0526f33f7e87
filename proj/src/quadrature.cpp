#include "bge/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace bge::quadrature {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod15(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {lo, hi, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

}  // namespace

Result gauss_kronrod(const std::function<double(double)>& f, double lo, double hi,
                     double abs_tol, double rel_tol, int max_subdivisions) {
  if (!(hi > lo)) {
    if (hi == lo) return {0.0, 0.0, 0, true};
    Result r = gauss_kronrod(f, hi, lo, abs_tol, rel_tol, max_subdivisions);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<Segment> heap;
  Segment first = kronrod15(f, lo, hi);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  std::size_t evals = 15;
  int subdivisions = 0;
  while (total_err > std::max(abs_tol, rel_tol * std::fabs(total)) && subdivisions < max_subdivisions) {
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      heap.push(worst);
      break;
    }
    Segment left = kronrod15(f, worst.lo, mid);
    Segment right = kronrod15(f, mid, worst.hi);
    evals += 30;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  double value = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {value, err, evals, err <= std::max(abs_tol, rel_tol * std::fabs(value))};
}

Result gauss_kronrod_half_line(const std::function<double(double)>& f, double lo,
                               double abs_tol, double rel_tol, int max_subdivisions) {
  auto mapped = [&](double t) {
    const double c = 1.0 - t;
    if (c <= 0.0) return 0.0;
    const double x = lo + t / c;
    const double v = f(x) / (c * c);
    return std::isfinite(v) ? v : 0.0;
  };
  return gauss_kronrod(mapped, 0.0, 1.0, abs_tol, rel_tol, max_subdivisions);
}

Result tanh_sinh_unit(const std::function<double(double, double)>& f, double abs_tol,
                      double rel_tol, int max_level) {
  constexpr double kHalfPi = 1.5707963267948966;
  constexpr double kTMax = 6.1;
  std::size_t evals = 0;

  // Contribution of the node pair ±t (or the centre when t == 0).
  auto pair_sum = [&](double t) {
    const double u = kHalfPi * std::sinh(t);
    const double e = std::exp(-2.0 * u);  // u >= 0
    const double x_hi = 1.0 / (1.0 + e);  // 1 - small
    const double x_lo = e / (1.0 + e);    // small
    // dx/dt = (π/2) cosh t · sech²u / 2, sech²u = 4e / (1 + e)²
    const double w = 2.0 * kHalfPi * std::cosh(t) * e / ((1.0 + e) * (1.0 + e));
    if (w == 0.0) return 0.0;
    double s = 0.0;
    const double f_hi = f(x_hi, x_lo);
    ++evals;
    if (std::isfinite(f_hi)) s += f_hi;
    if (t > 0.0) {
      const double f_lo = f(x_lo, x_hi);
      ++evals;
      if (std::isfinite(f_lo)) s += f_lo;
    }
    return w * s;
  };

  // Level 0: t = 0, 1, 2, ...
  double h = 1.0;
  double sum = 0.0;
  for (double t = 0.0; t <= kTMax; t += 1.0) sum += pair_sum(t);
  double estimate = sum * h;
  double err = std::fabs(estimate);
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double fresh = 0.0;
    for (double t = h; t <= kTMax; t += 2.0 * h) fresh += pair_sum(t);
    sum += fresh;
    const double next = sum * h;
    err = std::fabs(next - estimate);
    estimate = next;
    if (level >= 3 && err <= std::max(abs_tol, rel_tol * std::fabs(estimate))) {
      return {estimate, err, evals, true};
    }
  }
  return {estimate, err, evals, err <= std::max(abs_tol, rel_tol * std::fabs(estimate))};
}

Result tanh_sinh_half_line(const std::function<double(double)>& f, double lo, double abs_tol,
                           double rel_tol, int max_level) {
  auto mapped = [&](double s, double c) {
    const double x = lo + s / c;
    const double v = f(x) / (c * c);
    return std::isfinite(v) ? v : 0.0;
  };
  return tanh_sinh_unit(mapped, abs_tol, rel_tol, max_level);
}

}  // namespace bge::quadrature
