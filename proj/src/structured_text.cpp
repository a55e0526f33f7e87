#include "bge/structured_text.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bge::io {
namespace {

using inference::FitResult;
using inference::LrTestResult;
using inference::kParameterNames;

const std::string& require(const Record& r, const std::string& key) {
  const auto it = r.find(key);
  if (it == r.end()) throw std::invalid_argument("structured record: missing key '" + key + "'");
  return it->second;
}

double number(const Record& r, const std::string& key) {
  const std::string& s = require(r, key);
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("structured record: bad number for " + key);
  return v;
}

bool flag(const Record& r, const std::string& key) {
  const std::string& s = require(r, key);
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("structured record: bad boolean for " + key);
}

inference::Model model_of(const Record& r, const std::string& key) {
  const auto m = inference::parse_model(require(r, key));
  if (!m) throw std::invalid_argument("structured record: unknown model in " + key);
  return *m;
}

void put(std::ostringstream& out, const std::string& key, const std::string& value) {
  out << key << '=' << value << '\n';
}

const char* boolean(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string to_structured(const FitResult& fit) {
  std::ostringstream out;
  put(out, "model", inference::to_string(fit.model));
  put(out, "params.a", format_number(fit.params.a()));
  put(out, "params.b", format_number(fit.params.b()));
  put(out, "params.lambda", format_number(fit.params.lambda()));
  put(out, "params.alpha", format_number(fit.params.alpha()));
  put(out, "loglik", format_number(fit.loglik));
  put(out, "score_norm", format_number(fit.score_norm));
  put(out, "converged", boolean(fit.converged));
  put(out, "boundary", boolean(fit.boundary));
  put(out, "iterations", std::to_string(fit.iterations));
  const auto mask = inference::free_parameters(fit.model);
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      if (!mask[i] || !mask[j]) continue;
      put(out, std::string("cov.") + kParameterNames[i] + "." + kParameterNames[j],
          format_number(fit.covariance(i, j)));
    }
  }
  return out.str();
}

std::string to_structured(const LrTestResult& lr) {
  std::ostringstream out;
  put(out, "lr.null_model", inference::to_string(lr.null_model));
  put(out, "lr.alt_model", inference::to_string(lr.alt_model));
  put(out, "lr.statistic", format_number(lr.statistic));
  put(out, "lr.dof", std::to_string(lr.dof));
  put(out, "lr.p_value", format_number(lr.p_value));
  put(out, "lr.consistent", boolean(lr.consistent));
  return out.str();
}

std::vector<Record> parse_records(std::string_view text) {
  std::vector<Record> records;
  Record current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (!current.empty()) records.push_back(std::move(current));
      current.clear();
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw std::invalid_argument("structured text line " + std::to_string(line_no) +
                                  ": expected key=value");
    }
    current[std::string(line.substr(0, eq))] = std::string(line.substr(eq + 1));
    if (end == text.size()) break;
  }
  if (!current.empty()) records.push_back(std::move(current));
  return records;
}

FitResult fit_from_record(const Record& r) {
  FitResult fit;
  fit.model = model_of(r, "model");
  fit.params = BgeParams(number(r, "params.a"), number(r, "params.b"), number(r, "params.lambda"),
                         number(r, "params.alpha"));
  fit.loglik = number(r, "loglik");
  fit.score_norm = number(r, "score_norm");
  fit.converged = flag(r, "converged");
  fit.boundary = flag(r, "boundary");
  fit.iterations = std::stoi(require(r, "iterations"));
  const auto mask = inference::free_parameters(fit.model);
  fit.covariance.setZero();
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      if (!mask[i] || !mask[j]) continue;
      const double v =
          number(r, std::string("cov.") + kParameterNames[i] + "." + kParameterNames[j]);
      fit.covariance(i, j) = v;
      fit.covariance(j, i) = v;
    }
  }
  return fit;
}

LrTestResult lr_from_record(const Record& r) {
  LrTestResult lr;
  lr.null_model = model_of(r, "lr.null_model");
  lr.alt_model = model_of(r, "lr.alt_model");
  lr.statistic = number(r, "lr.statistic");
  lr.dof = std::stoi(require(r, "lr.dof"));
  lr.p_value = number(r, "lr.p_value");
  lr.consistent = flag(r, "lr.consistent");
  return lr;
}

nlohmann::json to_json(const FitResult& fit) {
  nlohmann::json j;
  j["model"] = inference::to_string(fit.model);
  j["params"] = {{"a", fit.params.a()},
                 {"b", fit.params.b()},
                 {"lambda", fit.params.lambda()},
                 {"alpha", fit.params.alpha()}};
  j["loglik"] = fit.loglik;
  j["score_norm"] = fit.score_norm;
  j["converged"] = fit.converged;
  j["boundary"] = fit.boundary;
  j["iterations"] = fit.iterations;
  if (!fit.message.empty()) j["message"] = fit.message;
  return j;
}

nlohmann::json to_json(const LrTestResult& lr) {
  return {{"lr",
           {{"null_model", inference::to_string(lr.null_model)},
            {"alt_model", inference::to_string(lr.alt_model)},
            {"statistic", lr.statistic},
            {"dof", lr.dof},
            {"p_value", lr.p_value},
            {"consistent", lr.consistent}}}};
}

}  // namespace bge::io
