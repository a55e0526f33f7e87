#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bge/distribution.hpp"
#include "bge/inference.hpp"

namespace bge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNoConvergence = 3;

enum class Command { fit, compare, sample, curve, reproduce };
enum class OutputFormat { human, structured, json };

struct Grid {
  double min;
  double max;
  std::size_t points;
};

struct RunConfig {
  Command command = Command::fit;
  std::optional<std::string> input_path;
  inference::Model model = inference::Model::bge;
  std::optional<std::uint64_t> seed;
  std::size_t n = 0;
  std::optional<BgeParams> params;
  std::optional<Grid> grid;
  std::optional<char> sweep;
  OutputFormat format = OutputFormat::human;
};

/// Bad data file: missing, malformed or nonpositive entry.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad flag value (exit status 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One positive number per line; '#' starts a comment; an optional
/// non-numeric header on the first data line is skipped.
Sample read_sample(std::istream& in, const std::string& label);

/// Reads a file, or the embedded glass-fibre data for "@glass-fibre".
Sample load_input(const std::string& path);

/// "min:max:points".
Grid parse_grid(const std::string& text);

/// "a,b,lambda,alpha".
BgeParams parse_params(const std::string& text);

/// One line of the glass-fibre reproduction report.
struct Check {
  std::string name;
  double reference;
  double computed;
  std::string tolerance;
  bool pass;
};

/// Log-likelihood and log-space score norm at a reference estimate.
struct ReferencePoint {
  inference::Model model;
  double reference_loglik;
  double loglik;
  double score_norm;
};

struct ReproduceReport {
  inference::FitResult ge;
  inference::FitResult be;
  inference::FitResult bge;
  inference::LrTestResult be_vs_bge;
  inference::LrTestResult ge_vs_bge;
  double ge_seconds = 0.0;
  double be_seconds = 0.0;
  double bge_seconds = 0.0;
  std::vector<ReferencePoint> reference_points;
  std::vector<Check> checks;
};

/// Fits GE, BE and BGE to the embedded glass-fibre data, runs both LR tests
/// and compares everything with the reference values.
ReproduceReport reproduce();

/// Parses arguments (without the program name) and runs the command.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace bge::cli
