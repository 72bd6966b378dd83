#pragma once

// Run configuration: flat `key=value` lines, `#` starts a comment.
// Precedence is command-line flags > config file > MA_BENCH_SEED (seed
// only) > built-in defaults.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mabench/model.hpp"
#include "mabench/sim.hpp"
#include "mabench/uncoordinated.hpp"

namespace mabench {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { Analytic, MonteCarlo, Both };

std::string_view to_string(Mode mode);

struct RunConfig {
  SystemParams params;
  bool enforce_minimum = false;
  std::vector<SchemeId> schemes = SchemeId::all();
  Mode mode = Mode::Both;
  double lambda = 1000.0;  // single-point subcommands
  double lambda_min = 1000.0;
  double lambda_max = 20000.0;
  std::size_t lambda_steps = 20;
  std::uint64_t trials = 10000;
  std::uint64_t master_seed = 1;
  std::string output_path;
  TargetSnrForm noma_snr_variant = TargetSnrForm::AsPrinted;
  unsigned threads = 0;

  /// Throws ConfigError.
  void validate() const;
  /// lambda_steps evenly spaced rates from lambda_min to lambda_max.
  std::vector<double> lambda_grid() const;
  SchemeConfig scheme_config(const SchemeId& id) const;
};

/// Every key accepted in a config file or as a --key flag.
const std::vector<std::string>& config_keys();

/// Builds a validated RunConfig. `overrides` holds flag values by key;
/// `env_seed` is the raw MA_BENCH_SEED value if set. Errors name the key
/// and, for file input, the line.
RunConfig parse_config(std::string_view file_text,
                       const std::map<std::string, std::string>& overrides = {},
                       std::optional<std::string> env_seed = std::nullopt);

}  // namespace mabench
