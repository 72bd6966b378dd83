#include "mabench/config.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "mabench/format.hpp"

namespace mabench {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Analytic: return "analytic";
    case Mode::MonteCarlo: return "montecarlo";
    case Mode::Both: return "both";
  }
  return "?";
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool parse_bool(std::string_view v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("expected a boolean, got '" + std::string(v) + "'");
}

Mode parse_mode(std::string_view v) {
  if (v == "analytic") return Mode::Analytic;
  if (v == "montecarlo") return Mode::MonteCarlo;
  if (v == "both") return Mode::Both;
  throw std::invalid_argument("mode must be analytic, montecarlo or both");
}

std::vector<SchemeId> parse_schemes(std::string_view v) {
  std::vector<SchemeId> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto comma = v.find(',', start);
    const auto item = trim(v.substr(start, comma == std::string_view::npos ? v.npos : comma - start));
    if (item == "all") {
      for (const auto& id : SchemeId::all()) out.push_back(id);
    } else if (!item.empty()) {
      out.push_back(SchemeId::parse(item));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("scheme list is empty");
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"bandwidth_hz", [](RunConfig& c, std::string_view v) { c.params.bandwidth_hz = parse_number<double>(v); }},
      {"slot_s", [](RunConfig& c, std::string_view v) { c.params.slot_s = parse_number<double>(v); }},
      {"payload_bits", [](RunConfig& c, std::string_view v) { c.params.payload_bits = parse_number<double>(v); }},
      {"ref_snr", [](RunConfig& c, std::string_view v) { c.params.ref_snr = parse_number<double>(v); }},
      {"pathloss_exp", [](RunConfig& c, std::string_view v) { c.params.pathloss_exp = parse_number<double>(v); }},
      {"min_slot_s", [](RunConfig& c, std::string_view v) { c.params.min_slot_s = parse_number<double>(v); }},
      {"min_subchannel_hz", [](RunConfig& c, std::string_view v) { c.params.min_subchannel_hz = parse_number<double>(v); }},
      {"enforce_minimum", [](RunConfig& c, std::string_view v) { c.enforce_minimum = parse_bool(v); }},
      {"schemes", [](RunConfig& c, std::string_view v) { c.schemes = parse_schemes(v); }},
      {"mode", [](RunConfig& c, std::string_view v) { c.mode = parse_mode(v); }},
      {"lambda", [](RunConfig& c, std::string_view v) { c.lambda = parse_number<double>(v); }},
      {"lambda_min", [](RunConfig& c, std::string_view v) { c.lambda_min = parse_number<double>(v); }},
      {"lambda_max", [](RunConfig& c, std::string_view v) { c.lambda_max = parse_number<double>(v); }},
      {"lambda_steps", [](RunConfig& c, std::string_view v) { c.lambda_steps = parse_number<std::size_t>(v); }},
      {"trials", [](RunConfig& c, std::string_view v) { c.trials = parse_number<std::uint64_t>(v); }},
      {"master_seed", [](RunConfig& c, std::string_view v) { c.master_seed = parse_number<std::uint64_t>(v); }},
      {"output_path", [](RunConfig& c, std::string_view v) { c.output_path = std::string(v); }},
      {"noma_snr_variant", [](RunConfig& c, std::string_view v) { c.noma_snr_variant = parse_target_snr_form(v); }},
      {"threads", [](RunConfig& c, std::string_view v) { c.threads = parse_number<unsigned>(v); }},
  };
  return table;
}

void apply(RunConfig& config, const std::string& key, std::string_view value,
           const std::string& where) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError(where + "unknown key '" + key + "'");
  try {
    it->second(config, value);
  } catch (const std::exception& e) {
    throw ConfigError(where + "key '" + key + "': " + e.what());
  }
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : setters()) out.push_back(k);
    return out;
  }();
  return keys;
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
  if (!(lambda_min >= 0.0)) throw ConfigError("lambda_min must be >= 0");
  if (!(lambda_min <= lambda_max)) throw ConfigError("lambda_min must not exceed lambda_max");
  if (lambda_steps < 1) throw ConfigError("lambda_steps must be >= 1");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (schemes.empty()) throw ConfigError("schemes must not be empty");
}

std::vector<double> RunConfig::lambda_grid() const {
  if (lambda_steps == 1) return {lambda_min};
  std::vector<double> grid(lambda_steps);
  const double span = lambda_max - lambda_min;
  for (std::size_t i = 0; i < lambda_steps; ++i) {
    grid[i] = lambda_min + span * static_cast<double>(i) / static_cast<double>(lambda_steps - 1);
  }
  grid.back() = lambda_max;
  return grid;
}

SchemeConfig RunConfig::scheme_config(const SchemeId& id) const {
  SchemeConfig sc;
  sc.id = id;
  sc.enforce_minimum = enforce_minimum;
  sc.snr_form = noma_snr_variant;
  return sc;
}

RunConfig parse_config(std::string_view file_text,
                       const std::map<std::string, std::string>& overrides,
                       std::optional<std::string> env_seed) {
  RunConfig config;
  std::map<std::string, std::string> origin;
  if (env_seed) apply(config, "master_seed", trim(*env_seed), "MA_BENCH_SEED: ");

  std::istringstream in{std::string(file_text)};
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + "expected key=value, got '" + body + "'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    if (key.empty()) throw ConfigError(where + "missing key before '='");
    apply(config, key, trim(std::string_view(body).substr(eq + 1)), where);
    origin[key] = "line " + std::to_string(lineno);
  }

  for (const auto& [key, value] : overrides) {
    apply(config, key, value, "flag --" + key + ": ");
    origin[key] = "flag --" + key;
  }
  try {
    config.validate();
  } catch (const ConfigError& e) {
    // Point at where the offending key was set, if it was set at all.
    const std::string what = e.what();
    const std::string* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& [key, where] : origin) {
      if (key.size() > best_len && what.find(key) != std::string::npos) {
        best = &where;
        best_len = key.size();
      }
    }
    if (best) throw ConfigError(*best + ": " + what);
    throw;
  }
  return config;
}

}  // namespace mabench
