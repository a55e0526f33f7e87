#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bge/inference.hpp"
#include "bge/specfun.hpp"

namespace bge::inference {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Negative log-likelihood over the logs of the free parameters.
class Objective {
 public:
  Objective(const Sample& data, Model model) : data_(data), mask_(free_parameters(model)) {
    for (int k = 0; k < 4; ++k) {
      if (mask_[k]) free_.push_back(k);
    }
  }

  int dim() const { return static_cast<int>(free_.size()); }

  BgeParams params(const Eigen::VectorXd& eta) const {
    std::array<double, 4> full = {1.0, 1.0, 1.0, 1.0};
    for (int f = 0; f < dim(); ++f) full[free_[f]] = std::exp(eta[f]);
    return {full[0], full[1], full[2], full[3]};
  }

  Eigen::VectorXd eta(const BgeParams& p) const {
    const std::array<double, 4> full = {p.a(), p.b(), p.lambda(), p.alpha()};
    Eigen::VectorXd e(dim());
    for (int f = 0; f < dim(); ++f) e[f] = std::log(full[free_[f]]);
    return e;
  }

  double value(const Eigen::VectorXd& eta) const {
    try {
      const double ll = log_likelihood(params(eta), data_);
      return std::isfinite(ll) ? -ll : kInf;
    } catch (const std::exception&) {
      return kInf;
    }
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& eta) const {
    const BgeParams p = params(eta);
    const Eigen::Vector4d s = score(p, data_).as_vector();
    const Eigen::Vector4d full(p.a(), p.b(), p.lambda(), p.alpha());
    Eigen::VectorXd g(dim());
    for (int f = 0; f < dim(); ++f) g[f] = -full[free_[f]] * s[free_[f]];
    return g;
  }

  const std::vector<int>& free_indices() const { return free_; }

 private:
  const Sample& data_;
  std::array<bool, 4> mask_;
  std::vector<int> free_;
};

struct LineSearch {
  double step;
  bool ok;
};

// Strong-Wolfe line search with bisection zoom.
LineSearch wolfe_search(const Objective& obj, const Eigen::VectorXd& x, double f0,
                        const Eigen::VectorXd& g0, const Eigen::VectorXd& p, double step_max) {
  constexpr double c1 = 1e-4;
  constexpr double c2 = 0.9;
  const double d0 = g0.dot(p);
  auto phi = [&](double t) { return obj.value(x + t * p); };
  auto dphi = [&](double t) { return obj.gradient(x + t * p).dot(p); };

  auto zoom = [&](double lo, double f_lo, double hi) -> LineSearch {
    for (int it = 0; it < 50; ++it) {
      const double t = 0.5 * (lo + hi);
      const double ft = phi(t);
      if (ft > f0 + c1 * t * d0 || ft >= f_lo) {
        hi = t;
      } else {
        const double dt = dphi(t);
        if (std::fabs(dt) <= -c2 * d0) return {t, true};
        if (dt * (hi - lo) >= 0.0) hi = lo;
        lo = t;
        f_lo = ft;
      }
    }
    return {lo, lo > 0.0 && f_lo < f0};
  };

  double t_prev = 0.0;
  double f_prev = f0;
  double t = std::min(1.0, step_max);
  for (int it = 0; it < 40; ++it) {
    const double ft = phi(t);
    if (ft > f0 + c1 * t * d0 || (it > 0 && ft >= f_prev)) return zoom(t_prev, f_prev, t);
    const double dt = dphi(t);
    if (std::fabs(dt) <= -c2 * d0) return {t, true};
    if (dt >= 0.0) return zoom(t, ft, t_prev);
    if (t >= step_max) return {t, true};
    t_prev = t;
    f_prev = ft;
    t = std::min(2.0 * t, step_max);
  }
  return {t, phi(t) < f0};
}

Eigen::MatrixXd numeric_hessian(const Objective& obj, const Eigen::VectorXd& x) {
  const int n = obj.dim();
  Eigen::MatrixXd h(n, n);
  constexpr double step = 1e-5;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd xp = x;
    Eigen::VectorXd xm = x;
    xp[j] += step;
    xm[j] -= step;
    h.col(j) = (obj.gradient(xp) - obj.gradient(xm)) / (2.0 * step);
  }
  return 0.5 * (h + h.transpose());
}

struct LocalFit {
  Eigen::VectorXd eta;
  double value = kInf;
  double grad_norm = kInf;
  int iterations = 0;
  bool boundary = false;
};

bool outside(const Eigen::VectorXd& eta, double lo, double hi) {
  for (int k = 0; k < eta.size(); ++k) {
    if (!(eta[k] >= lo && eta[k] <= hi)) return true;
  }
  return false;
}

// Damped Newton steps on a finite-difference Hessian of the analytic gradient.
void newton_polish(const Objective& obj, LocalFit& fit, const FitOptions& opt) {
  const double lo = std::log(opt.lower_bound);
  const double hi = std::log(opt.upper_bound);
  Eigen::VectorXd g = obj.gradient(fit.eta);
  for (int it = 0; it < 40 && g.lpNorm<Eigen::Infinity>() >= opt.gradient_tol; ++it) {
    Eigen::MatrixXd h = numeric_hessian(obj, fit.eta);
    Eigen::VectorXd step;
    double shift = 0.0;
    for (int attempt = 0; attempt < 30; ++attempt) {
      Eigen::MatrixXd shifted = h;
      shifted.diagonal().array() += shift;
      Eigen::LLT<Eigen::MatrixXd> llt(shifted);
      if (llt.info() == Eigen::Success) {
        step = -llt.solve(g);
        break;
      }
      shift = (shift == 0.0) ? 1e-8 * std::max(1.0, h.diagonal().cwiseAbs().maxCoeff()) : shift * 10.0;
    }
    if (step.size() == 0) return;
    bool moved = false;
    double t = 1.0;
    for (int back = 0; back < 40; ++back, t *= 0.5) {
      const Eigen::VectorXd trial = fit.eta + t * step;
      const double fv = obj.value(trial);
      if (!std::isfinite(fv)) continue;
      const Eigen::VectorXd gt = obj.gradient(trial);
      if (fv < fit.value ||
          (fv <= fit.value + 1e-12 * std::fabs(fit.value) &&
           gt.lpNorm<Eigen::Infinity>() < g.lpNorm<Eigen::Infinity>())) {
        fit.eta = trial;
        fit.value = fv;
        g = gt;
        moved = true;
        break;
      }
    }
    ++fit.iterations;
    if (!moved) break;
    if (outside(fit.eta, lo, hi)) {
      fit.boundary = true;
      break;
    }
  }
  fit.grad_norm = g.lpNorm<Eigen::Infinity>();
}

LocalFit bfgs(const Objective& obj, const Eigen::VectorXd& start, const FitOptions& opt) {
  const double lo = std::log(opt.lower_bound);
  const double hi = std::log(opt.upper_bound);
  const int n = obj.dim();
  LocalFit fit;
  fit.eta = start;
  fit.value = obj.value(start);
  if (!std::isfinite(fit.value)) return fit;
  Eigen::VectorXd g = obj.gradient(start);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool fresh = true;
  int flat = 0;
  for (; fit.iterations < opt.max_iterations; ++fit.iterations) {
    if (g.lpNorm<Eigen::Infinity>() < opt.gradient_tol) break;
    Eigen::VectorXd p = -hinv * g;
    if (!(g.dot(p) < 0.0)) {
      hinv.setIdentity();
      fresh = true;
      p = -g;
    }
    const double step_max = 4.0 / std::max(p.lpNorm<Eigen::Infinity>(), 1e-300);
    const LineSearch ls = wolfe_search(obj, fit.eta, fit.value, g, p, step_max);
    if (!ls.ok) {
      if (fresh) break;
      hinv.setIdentity();
      fresh = true;
      continue;
    }
    const Eigen::VectorXd next = fit.eta + ls.step * p;
    const double f_next = obj.value(next);
    const Eigen::VectorXd g_next = obj.gradient(next);
    const Eigen::VectorXd s = next - fit.eta;
    const Eigen::VectorXd y = g_next - g;
    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      if (fresh) hinv *= sy / y.dot(y);
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
      hinv = (eye - rho * s * y.transpose()) * hinv * (eye - rho * y * s.transpose()) +
             rho * s * s.transpose();
      fresh = false;
    }
    flat = (fit.value - f_next < 1e-14 * (1.0 + std::fabs(fit.value))) ? flat + 1 : 0;
    fit.eta = next;
    fit.value = f_next;
    g = g_next;
    if (outside(fit.eta, lo, hi)) {
      fit.boundary = true;
      break;
    }
    if (flat >= 5) break;
  }
  fit.grad_norm = g.lpNorm<Eigen::Infinity>();
  if (!fit.boundary && fit.grad_norm >= opt.gradient_tol) newton_polish(obj, fit, opt);
  return fit;
}

// Method-of-moments GE start: match the coefficient of variation, then the mean.
BgeParams moment_matched_ge(const Sample& data) {
  const auto v = data.values();
  const double mean = data.mean();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double var = v.size() > 1 ? ss / static_cast<double>(v.size() - 1) : mean * mean;
  const double cv2 = var > 0.0 ? var / (mean * mean) : 1e-6;
  auto cv2_of = [](double alpha) {
    const double c = specfun::digamma(alpha + 1.0) - specfun::digamma(1.0);
    const double d = specfun::trigamma(1.0) - specfun::trigamma(alpha + 1.0);
    return d / (c * c);
  };
  double lo = std::log(1e-6);
  double hi = std::log(1e7);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cv2_of(std::exp(mid)) > cv2) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double alpha = std::exp(0.5 * (lo + hi));
  const double lambda = (specfun::digamma(alpha + 1.0) - specfun::digamma(1.0)) / mean;
  return BgeParams::generalized_exponential(lambda, alpha);
}

BgeParams project(const BgeParams& p, Model model) {
  const auto mask = free_parameters(model);
  return {mask[0] ? p.a() : 1.0, mask[1] ? p.b() : 1.0, mask[2] ? p.lambda() : 1.0,
          mask[3] ? p.alpha() : 1.0};
}

void attach_covariance(FitResult& r, std::size_t n) {
  const auto mask = free_parameters(r.model);
  std::vector<int> idx;
  for (int k = 0; k < 4; ++k) {
    if (mask[k]) idx.push_back(k);
  }
  const int m = static_cast<int>(idx.size());
  r.covariance.setZero();
  try {
    const InfoMatrix info = information_matrix(r.params, n);
    const Eigen::Matrix4d total = info.total();
    Eigen::MatrixXd sub(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) sub(i, j) = total(idx[i], idx[j]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(sub);
    if (llt.info() != Eigen::Success || !sub.allFinite()) {
      throw std::domain_error("information not positive definite");
    }
    const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(m, m));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) r.covariance(idx[i], idx[j]) = inv(i, j);
    }
  } catch (const std::exception& e) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        r.covariance(idx[i], idx[j]) = std::numeric_limits<double>::quiet_NaN();
      }
    }
    if (!r.message.empty()) r.message += "; ";
    r.message += std::string("covariance unavailable: ") + e.what();
  }
}

FitResult fit_exponential(const Sample& data, const FitOptions& opt) {
  FitResult r;
  r.model = Model::exp;
  r.params = BgeParams::exponential(1.0 / data.mean());
  r.loglik = log_likelihood(r.params, data);
  const ScoreVector s = score(r.params, data);
  r.score_norm = std::fabs(r.params.lambda() * s.d_lambda);
  r.converged = r.score_norm < opt.gradient_tol;
  r.message = r.converged ? "closed form" : "closed form; score not below tolerance";
  if (opt.compute_covariance) attach_covariance(r, data.size());
  return r;
}

}  // namespace

FitResult fit_mle(const Sample& data, Model model, const FitOptions& options) {
  if (model == Model::exp) return fit_exponential(data, options);
  const Objective obj(data, model);

  std::vector<BgeParams> starts;
  if (options.init) {
    starts.push_back(project(*options.init, model));
  } else {
    const BgeParams mm = moment_matched_ge(data);
    BgeParams base = mm;
    if (model != Model::ge) {
      FitOptions ge_opt = options;
      ge_opt.init = mm;
      ge_opt.compute_covariance = false;
      base = fit_mle(data, Model::ge, ge_opt).params;
    }
    starts.push_back(project(base, model));
    const auto mask = free_parameters(model);
    const std::array<double, 4> rungs = {0.5, 1.0, 2.0, 10.0};
    if (mask[0] || mask[1]) {
      for (double a : rungs) {
        for (double b : rungs) {
          if (!mask[0] && a != 1.0) continue;
          if (!mask[1] && b != 1.0) continue;
          starts.push_back(project({a, b, base.lambda(), base.alpha()}, model));
        }
      }
    } else {
      for (double scale : {0.1, 10.0}) {
        starts.push_back(project({1.0, 1.0, base.lambda(), base.alpha() * scale}, model));
      }
    }
  }

  LocalFit best;
  int best_index = -1;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const LocalFit local = bfgs(obj, obj.eta(starts[s]), options);
    if (!std::isfinite(local.value)) continue;
    if (best_index < 0 || local.value < best.value) {
      best = local;
      best_index = static_cast<int>(s);
    }
  }

  FitResult r;
  r.model = model;
  if (best_index < 0) {
    r.params = starts.front();
    r.loglik = -kInf;
    r.score_norm = kInf;
    r.message = "no start produced a finite log-likelihood";
    return r;
  }
  r.params = obj.params(best.eta);
  r.loglik = -best.value;
  r.score_norm = best.grad_norm;
  r.iterations = best.iterations;
  r.start_index = best_index;
  r.boundary = best.boundary;
  r.converged = !best.boundary && best.grad_norm < options.gradient_tol;
  if (r.boundary) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "a parameter left [%g, %g]; the supremum lies on the boundary",
                  options.lower_bound, options.upper_bound);
    r.message = buf;
  } else if (!r.converged) {
    r.message = "gradient tolerance not reached";
  }
  if (options.compute_covariance) attach_covariance(r, data.size());
  return r;
}

std::vector<ConfidenceInterval> confidence_intervals(const FitResult& fit, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::domain_error("confidence_intervals: gamma in (0, 1)");
  if (!fit.converged) throw std::domain_error("confidence_intervals: fit did not converge");
  const double z = specfun::normal_quantile(1.0 - 0.5 * gamma);
  const auto mask = free_parameters(fit.model);
  const std::array<double, 4> est = {fit.params.a(), fit.params.b(), fit.params.lambda(),
                                     fit.params.alpha()};
  std::vector<ConfidenceInterval> out;
  for (int k = 0; k < 4; ++k) {
    if (!mask[k]) continue;
    const double var = fit.covariance(k, k);
    if (!(var > 0.0) || !std::isfinite(var)) {
      throw std::domain_error("confidence_intervals: covariance is not positive definite");
    }
    const double se = std::sqrt(var);
    out.push_back({kParameterNames[k], est[k], se, est[k] - z * se, est[k] + z * se});
  }
  return out;
}

LrTestResult lr_test(const FitResult& null_fit, const FitResult& alt_fit) {
  if (!is_nested(null_fit.model, alt_fit.model) && null_fit.model != alt_fit.model) {
    throw std::invalid_argument("lr_test: null model is not nested in the alternative");
  }
  LrTestResult r;
  r.null_model = null_fit.model;
  r.alt_model = alt_fit.model;
  r.null_fit = null_fit;
  r.alt_fit = alt_fit;
  r.dof = free_parameter_count(alt_fit.model) - free_parameter_count(null_fit.model);
  double w = 2.0 * (alt_fit.loglik - null_fit.loglik);
  if (w < -1e-6) {
    r.consistent = false;
  } else if (w < 0.0) {
    w = 0.0;
  }
  r.statistic = w;
  r.p_value = (r.dof == 0) ? 1.0 : specfun::chi_square_survival(std::max(w, 0.0), r.dof);
  return r;
}

LrTestResult lr_test(const Sample& data, Model null_model, Model alt_model,
                     const FitOptions& options) {
  if (!is_nested(null_model, alt_model) && null_model != alt_model) {
    throw std::invalid_argument("lr_test: null model is not nested in the alternative");
  }
  const FitResult null_fit = fit_mle(data, null_model, options);
  FitResult alt_fit = fit_mle(data, alt_model, options);
  if (null_model != alt_model) {
    FitOptions seeded = options;
    seeded.init = null_fit.params;
    FitResult from_null = fit_mle(data, alt_model, seeded);
    if (from_null.loglik > alt_fit.loglik) alt_fit = std::move(from_null);
  } else {
    alt_fit = null_fit;
  }
  return lr_test(null_fit, alt_fit);
}

}  // namespace bge::inference
