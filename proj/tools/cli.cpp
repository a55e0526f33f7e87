#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bge/errors.hpp"
#include "bge/glass_fibre.hpp"
#include "bge/series.hpp"
#include "bge/structured_text.hpp"

namespace bge::cli {
namespace {

using inference::FitResult;
using inference::LrTestResult;
using inference::Model;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

std::string num(double v) { return io::format_number(v); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Better of the ladder fit and fits started from each nested estimate.
FitResult best_alternative(const Sample& data, Model alt, const std::vector<FitResult>& nested) {
  FitResult best = inference::fit_mle(data, alt);
  for (const FitResult& n : nested) {
    inference::FitOptions seeded;
    seeded.init = n.params;
    FitResult f = inference::fit_mle(data, alt, seeded);
    if (f.loglik > best.loglik) best = std::move(f);
  }
  return best;
}

void print_fit_human(const FitResult& fit, std::ostream& out) {
  const auto mask = inference::free_parameters(fit.model);
  const std::array<double, 4> est = {fit.params.a(), fit.params.b(), fit.params.lambda(),
                                     fit.params.alpha()};
  out << "model           " << inference::to_string(fit.model) << '\n';
  for (int k = 0; k < 4; ++k) {
    char line[128];
    const double var = fit.covariance(k, k);
    if (mask[k] && var > 0.0 && std::isfinite(var)) {
      std::snprintf(line, sizeof line, "%-15s %-16.10g se %.4g\n", inference::kParameterNames[k],
                    est[k], std::sqrt(var));
    } else {
      std::snprintf(line, sizeof line, "%-15s %-16.10g%s\n", inference::kParameterNames[k], est[k],
                    mask[k] ? "" : " (fixed)");
    }
    out << line;
  }
  out << "log-likelihood  " << num(fit.loglik) << '\n';
  out << "score norm      " << num(fit.score_norm) << '\n';
  out << "converged       " << (fit.converged ? "yes" : "no") << '\n';
  if (!fit.message.empty()) out << "note            " << fit.message << '\n';
  if (fit.converged) {
    try {
      for (const auto& ci : inference::confidence_intervals(fit, 0.05)) {
        out << "95% CI " << ci.parameter << "  [" << num(ci.lower) << ", " << num(ci.upper)
            << "]\n";
      }
    } catch (const std::domain_error&) {
      out << "95% CI          unavailable (information not positive definite)\n";
    }
  }
}

void print_lr_human(const LrTestResult& lr, std::ostream& out) {
  out << inference::to_string(lr.null_model) << " vs " << inference::to_string(lr.alt_model)
      << ": w = " << num(lr.statistic) << ", dof = " << lr.dof << ", p = " << num(lr.p_value);
  if (!lr.consistent) out << " (alternative fit below null fit)";
  out << '\n';
}

int cmd_fit(const RunConfig& cfg, std::ostream& out) {
  const Sample data = load_input(*cfg.input_path);
  const FitResult fit = inference::fit_mle(data, cfg.model);
  switch (cfg.format) {
    case OutputFormat::human:
      print_fit_human(fit, out);
      break;
    case OutputFormat::structured:
      out << io::to_structured(fit);
      break;
    case OutputFormat::json:
      out << io::to_json(fit).dump(2) << '\n';
      break;
  }
  return fit.converged ? kExitOk : kExitNoConvergence;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const Sample data = load_input(*cfg.input_path);
  const FitResult ge = inference::fit_mle(data, Model::ge);
  const FitResult be = inference::fit_mle(data, Model::be);
  const FitResult bge = best_alternative(data, Model::bge, {be, ge});
  const LrTestResult lr_be = inference::lr_test(be, bge);
  const LrTestResult lr_ge = inference::lr_test(ge, bge);
  std::string failed;
  for (const FitResult* f : {&bge, &be, &ge}) {
    if (!f->converged) failed += (failed.empty() ? "" : ",") + inference::to_string(f->model);
  }
  switch (cfg.format) {
    case OutputFormat::human:
      for (const FitResult* f : {&bge, &be, &ge}) {
        print_fit_human(*f, out);
        out << '\n';
      }
      print_lr_human(lr_be, out);
      print_lr_human(lr_ge, out);
      if (!failed.empty()) out << "not converged: " << failed << '\n';
      break;
    case OutputFormat::structured:
      for (const FitResult* f : {&bge, &be, &ge}) out << io::to_structured(*f) << '\n';
      out << io::to_structured(lr_be) << '\n' << io::to_structured(lr_ge);
      if (!failed.empty()) out << "\nnot_converged=" << failed << '\n';
      break;
    case OutputFormat::json: {
      nlohmann::json j;
      j["fits"] = {io::to_json(bge), io::to_json(be), io::to_json(ge)};
      j["tests"] = {io::to_json(lr_be), io::to_json(lr_ge)};
      j["not_converged"] = failed;
      out << j.dump(2) << '\n';
      break;
    }
  }
  return failed.empty() ? kExitOk : kExitNoConvergence;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.params) throw UsageError("sample needs --params");
  if (!cfg.seed) throw UsageError("sample needs an explicit --seed");
  if (cfg.n < 1) throw UsageError("sample needs --n >= 1");
  RandomStream rng(*cfg.seed);
  const Sample s = BgeDistribution(*cfg.params).sample(cfg.n, rng);
  char buf[32];
  for (double x : s.values()) {
    std::snprintf(buf, sizeof buf, "%.17g\n", x);
    out << buf;
  }
  return kExitOk;
}

int cmd_curve(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.grid) throw UsageError("curve needs --grid min:max:points");
  const Grid g = *cfg.grid;
  const double step = (g.max - g.min) / static_cast<double>(g.points - 1);
  if (cfg.sweep) {
    const char which = *cfg.sweep;
    const BgeParams base = cfg.params.value_or(which == 'a' ? BgeParams(1.0, 2.0, 1.0, 1.0)
                                                            : BgeParams(2.0, 1.0, 1.0, 1.0));
    if (!(g.min > 0.0)) throw UsageError("sweep grid must be positive");
    out << "# " << which << ",skewness,kurtosis\n";
    for (std::size_t k = 0; k < g.points; ++k) {
      const double v = (k + 1 == g.points) ? g.max : g.min + step * static_cast<double>(k);
      const BgeParams p = (which == 'a') ? BgeParams(v, base.b(), base.lambda(), base.alpha())
                                         : BgeParams(base.a(), v, base.lambda(), base.alpha());
      const series::ShapeMeasures sk = series::skewness_kurtosis(p);
      out << num(v) << ',' << num(sk.skewness) << ',' << num(sk.kurtosis) << '\n';
    }
    return kExitOk;
  }
  if (!cfg.params) throw UsageError("curve needs --params");
  if (g.min < 0.0) throw UsageError("density grid must start at x >= 0");
  const BgeDistribution dist(*cfg.params);
  out << "# x,pdf,cdf,hazard\n";
  for (std::size_t k = 0; k < g.points; ++k) {
    const double x = (k + 1 == g.points) ? g.max : g.min + step * static_cast<double>(k);
    double hazard = 0.0;
    try {
      hazard = dist.hazard(x);
    } catch (const std::overflow_error&) {
      hazard = std::numeric_limits<double>::infinity();
    }
    out << num(x) << ',' << num(dist.pdf(x)) << ',' << num(dist.cdf(x)) << ',' << num(hazard)
        << '\n';
  }
  return kExitOk;
}

void print_report_human(const ReproduceReport& r, std::ostream& out) {
  out << "glass-fibre strengths, n = " << glass_fibre::values().size() << "\n\n";
  for (const FitResult* f : {&r.ge, &r.be, &r.bge}) {
    print_fit_human(*f, out);
    out << '\n';
  }
  print_lr_human(r.be_vs_bge, out);
  print_lr_human(r.ge_vs_bge, out);
  out << "\nat the reference estimates\n";
  for (const ReferencePoint& p : r.reference_points) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-4s loglik %-14.10g (reference %.6g)  log-space score norm %.3g\n",
                  inference::to_string(p.model).c_str(), p.loglik, p.reference_loglik,
                  p.score_norm);
    out << line;
  }
  out << "\ncomparison\n";
  std::size_t passed = 0;
  for (const Check& c : r.checks) {
    char line[200];
    std::snprintf(line, sizeof line, "  %-4s %-22s reference %-12.6g computed %-14.8g %-18s\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.reference, c.computed,
                  c.tolerance.c_str());
    out << line;
    passed += c.pass ? 1 : 0;
  }
  out << "  " << passed << " of " << r.checks.size() << " checks pass\n";
}

void print_report_structured(const ReproduceReport& r, std::ostream& out) {
  for (const FitResult* f : {&r.ge, &r.be, &r.bge}) out << io::to_structured(*f) << '\n';
  out << io::to_structured(r.be_vs_bge) << '\n' << io::to_structured(r.ge_vs_bge) << '\n';
  for (const Check& c : r.checks) {
    out << "check." << c.name << ".reference=" << num(c.reference) << '\n';
    out << "check." << c.name << ".computed=" << num(c.computed) << '\n';
    out << "check." << c.name << ".pass=" << (c.pass ? "true" : "false") << '\n';
  }
}

int cmd_reproduce(const RunConfig& cfg, std::ostream& out) {
  const ReproduceReport r = reproduce();
  switch (cfg.format) {
    case OutputFormat::human:
      print_report_human(r, out);
      break;
    case OutputFormat::structured:
      print_report_structured(r, out);
      break;
    case OutputFormat::json: {
      nlohmann::json j;
      j["fits"] = {io::to_json(r.ge), io::to_json(r.be), io::to_json(r.bge)};
      j["tests"] = {io::to_json(r.be_vs_bge), io::to_json(r.ge_vs_bge)};
      for (const Check& c : r.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"reference", c.reference},
                               {"computed", c.computed},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}});
      }
      out << j.dump(2) << '\n';
      break;
    }
  }
  return kExitOk;
}

Check relative(const std::string& name, double ref, double got, double tol) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "rel %g", tol);
  return {name, ref, got, buf, std::fabs(got - ref) <= tol * std::fabs(ref)};
}

Check absolute(const std::string& name, double ref, double got, double tol) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "abs %g", tol);
  return {name, ref, got, buf, std::fabs(got - ref) <= tol};
}

Check below(const std::string& name, double limit, double got) {
  return {name, limit, got, "< limit", got < limit};
}

Check factor(const std::string& name, double ref, double got, double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "factor %g", f);
  return {name, ref, got, buf, got >= ref / f && got <= ref * f};
}

}  // namespace

Sample read_sample(std::istream& in, const std::string& label) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string field = trim(line);
    if (field.empty()) continue;
    const std::optional<double> v = to_double(field);
    if (!v) {
      const unsigned char c0 = static_cast<unsigned char>(field.front());
      if (header_allowed && (std::isalpha(c0) || c0 == '"')) {
        header_allowed = false;
        continue;
      }
      throw InputError("line " + std::to_string(line_no) + ": malformed value '" + field + "'");
    }
    header_allowed = false;
    if (!(*v > 0.0) || !std::isfinite(*v)) {
      throw InputError("line " + std::to_string(line_no) + ": nonpositive value " + field);
    }
    values.push_back(*v);
  }
  if (values.empty()) throw InputError("no observations in " + label);
  return Sample(std::move(values), label);
}

Sample load_input(const std::string& path) {
  if (path == "@glass-fibre") return glass_fibre::sample();
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_sample(in, path);
}

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(trim(p));
  if (parts.size() != 3) throw UsageError("grid must be min:max:points");
  const auto lo = to_double(parts[0]);
  const auto hi = to_double(parts[1]);
  const auto pts = to_double(parts[2]);
  if (!lo || !hi || !pts || *pts != std::floor(*pts)) throw UsageError("grid must be min:max:points");
  if (!(*lo < *hi) || *pts < 2.0) throw UsageError("grid needs min < max and points >= 2");
  return {*lo, *hi, static_cast<std::size_t>(*pts)};
}

BgeParams parse_params(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    const auto d = to_double(trim(p));
    if (!d) throw UsageError("params must be a,b,lambda,alpha");
    v.push_back(*d);
  }
  if (v.size() != 4) throw UsageError("params must be a,b,lambda,alpha");
  try {
    return {v[0], v[1], v[2], v[3]};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

ReproduceReport reproduce() {
  const Sample data = glass_fibre::sample();
  ReproduceReport r;
  auto t0 = std::chrono::steady_clock::now();
  r.ge = inference::fit_mle(data, Model::ge);
  r.ge_seconds = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  r.be = inference::fit_mle(data, Model::be);
  r.be_seconds = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  r.bge = best_alternative(data, Model::bge, {r.be, r.ge});
  r.bge_seconds = seconds_since(t0);
  r.be_vs_bge = inference::lr_test(r.be, r.bge);
  r.ge_vs_bge = inference::lr_test(r.ge, r.bge);

  for (Model m : {Model::ge, Model::be, Model::bge}) {
    const glass_fibre::ReferenceFit ref = glass_fibre::reference_fit(m);
    const inference::ScoreVector s = inference::score(ref.params, data);
    const auto mask = inference::free_parameters(m);
    const std::array<double, 4> scaled = {ref.params.a() * s.d_a, ref.params.b() * s.d_b,
                                          ref.params.lambda() * s.d_lambda,
                                          ref.params.alpha() * s.d_alpha};
    double norm = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (mask[k]) norm = std::max(norm, std::fabs(scaled[k]));
    }
    r.reference_points.push_back({m, ref.loglik, inference::log_likelihood(ref.params, data), norm});
  }

  const auto ge_ref = glass_fibre::reference_fit(Model::ge);
  const auto be_ref = glass_fibre::reference_fit(Model::be);
  const auto bge_ref = glass_fibre::reference_fit(Model::bge);
  auto& c = r.checks;
  c.push_back(relative("ge.lambda", ge_ref.params.lambda(), r.ge.params.lambda(), 0.01));
  c.push_back(relative("ge.alpha", ge_ref.params.alpha(), r.ge.params.alpha(), 0.01));
  c.push_back(absolute("ge.loglik", ge_ref.loglik, r.ge.loglik, 0.02));
  c.push_back(below("ge.seconds", 1.0, r.ge_seconds));
  c.push_back(relative("be.a", be_ref.params.a(), r.be.params.a(), 0.02));
  c.push_back(relative("be.b", be_ref.params.b(), r.be.params.b(), 0.02));
  c.push_back(relative("be.lambda", be_ref.params.lambda(), r.be.params.lambda(), 0.02));
  c.push_back(absolute("be.loglik", be_ref.loglik, r.be.loglik, 0.05));
  c.push_back(below("be.seconds", 5.0, r.be_seconds));
  c.push_back({"bge.loglik_floor", bge_ref.loglik - 0.05, r.bge.loglik, ">= reference - 0.05",
               r.bge.loglik >= bge_ref.loglik - 0.05});
  c.push_back(absolute("bge.loglik", bge_ref.loglik, r.bge.loglik, 0.05));
  c.push_back(relative("bge.a", bge_ref.params.a(), r.bge.params.a(), 0.10));
  c.push_back(relative("bge.b", bge_ref.params.b(), r.bge.params.b(), 0.10));
  c.push_back(relative("bge.lambda", bge_ref.params.lambda(), r.bge.params.lambda(), 0.10));
  c.push_back(relative("bge.alpha", bge_ref.params.alpha(), r.bge.params.alpha(), 0.10));
  c.push_back(below("bge.seconds", 30.0, r.bge_seconds));
  const auto lr_be_ref = glass_fibre::reference_lr(Model::be);
  const auto lr_ge_ref = glass_fibre::reference_lr(Model::ge);
  c.push_back(absolute("lr.be_vs_bge", lr_be_ref.statistic, r.be_vs_bge.statistic, 0.1));
  c.push_back(absolute("lr.ge_vs_bge", lr_ge_ref.statistic, r.ge_vs_bge.statistic, 0.1));
  c.push_back(factor("lr.be_vs_bge.p", lr_be_ref.p_value, r.be_vs_bge.p_value, 2.0));
  c.push_back(factor("lr.ge_vs_bge.p", lr_ge_ref.p_value, r.ge_vs_bge.p_value, 2.0));
  return r;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::fit:
        return cmd_fit(cfg, out);
      case Command::compare:
        return cmd_compare(cfg, out);
      case Command::sample:
        return cmd_sample(cfg, out);
      case Command::curve:
        return cmd_curve(cfg, out);
      case Command::reproduce:
        return cmd_reproduce(cfg, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConvergenceError& e) {
    err << "not converged: " << e.what() << '\n';
    return kExitNoConvergence;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beta generalized exponential distribution: fitting, sampling and curves",
               "bge_cli"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string model = "bge";
  std::string format = "human";
  std::string input;
  std::string params;
  std::string grid;
  std::string sweep;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  const std::vector<std::string> models = {"bge", "be", "ge", "dge", "exp"};
  const std::vector<std::string> formats = {"human", "structured", "json"};

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "human, structured (key=value) or json")
        ->check(CLI::IsMember(formats));
  };

  CLI::App* fit = app.add_subcommand("fit", "maximum-likelihood fit of one model");
  fit->add_option("--input", input, "data file, or @glass-fibre")->required();
  fit->add_option("--model", model, "bge, be, ge, dge or exp")->check(CLI::IsMember(models));
  add_format(fit);

  CLI::App* compare = app.add_subcommand("compare", "fit BGE, BE and GE and run both LR tests");
  compare->add_option("--input", input, "data file, or @glass-fibre")->required();
  add_format(compare);

  CLI::App* sample = app.add_subcommand("sample", "draw a sample, one value per line");
  sample->add_option("--params", params, "a,b,lambda,alpha")->required();
  sample->add_option("--n", n, "sample size")->required();
  sample->add_option("--seed", seed, "random seed")->required();

  CLI::App* curve = app.add_subcommand("curve", "pdf/cdf/hazard table or skewness/kurtosis sweep");
  curve->add_option("--params", params, "a,b,lambda,alpha");
  curve->add_option("--grid", grid, "min:max:points")->required();
  curve->add_option("--sweep", sweep, "sweep a or b instead of x")->check(CLI::IsMember({"a", "b"}));

  CLI::App* repro = app.add_subcommand("reproduce", "glass-fibre report against reference values");
  add_format(repro);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fit) cfg.command = Command::fit;
    if (*compare) cfg.command = Command::compare;
    if (*sample) cfg.command = Command::sample;
    if (*curve) cfg.command = Command::curve;
    if (*repro) cfg.command = Command::reproduce;
    cfg.model = *inference::parse_model(model);
    cfg.format = format == "structured" ? OutputFormat::structured
                 : format == "json"     ? OutputFormat::json
                                        : OutputFormat::human;
    if (!input.empty()) cfg.input_path = input;
    if (!params.empty()) cfg.params = parse_params(params);
    if (!grid.empty()) cfg.grid = parse_grid(grid);
    if (!sweep.empty()) cfg.sweep = sweep.front();
    if (*sample) {
      cfg.seed = seed;
      cfg.n = n;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return execute(cfg, out, err);
}

}  // namespace bge::cli
