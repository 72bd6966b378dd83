#include "mabench/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "mabench/config.hpp"
#include "mabench/csv.hpp"
#include "mabench/format.hpp"
#include "mabench/sim.hpp"

namespace mabench {

namespace {

struct Invocation {
  std::string config_path;
  std::map<std::string, std::string> flags;
};

void add_common_options(CLI::App& cmd, Invocation& inv) {
  cmd.add_option("-c,--config", inv.config_path, "key=value configuration file");
  for (const auto& key : config_keys()) {
    cmd.add_option_function<std::string>(
        "--" + key, [&inv, key](const std::string& v) { inv.flags[key] = v; },
        "override '" + key + "'");
  }
}

RunConfig load(const Invocation& inv, const std::optional<std::string>& env_seed) {
  std::string text;
  if (!inv.config_path.empty()) {
    std::ifstream file(inv.config_path);
    if (!file) throw std::runtime_error("cannot read config file '" + inv.config_path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    text = buf.str();
  }
  return parse_config(text, inv.flags, env_seed);
}

std::vector<SchemeId> schemes_for(const RunConfig& config, Coordination c) {
  std::vector<SchemeId> out;
  for (const auto& id : config.schemes) {
    if (id.coordination == c) out.push_back(id);
  }
  if (out.empty()) {
    for (auto s : {Scheme::Noma, Scheme::Fdma, Scheme::Tdma}) out.push_back({c, s});
  }
  return out;
}

void deliver(const std::vector<SweepRow>& rows, const RunConfig& config, std::ostream& out,
             std::ostream& err) {
  if (config.output_path.empty()) {
    write_csv(rows, out);
    return;
  }
  emit_csv(rows, config.output_path);
  err << "wrote " << rows.size() << " rows to " << config.output_path << '\n';
}

std::string design_text(const SchemeConfig& sc) {
  if (!sc.design) return "-";
  const auto& d = *sc.design;
  if (d.scheme == Scheme::Noma) return "gamma0=" + to_decimal(d.target_snr);
  return "p_c=" + to_decimal(d.access_prob) + " N=" + std::to_string(d.partitions);
}

int single_point(const RunConfig& config, Coordination c, std::ostream& out, std::ostream& err) {
  const TrafficModel traffic{config.lambda};
  const std::vector<double> grid{config.lambda};
  const SweepOptions options{config.trials, config.master_seed, config.threads};
  std::vector<SweepRow> rows;

  out << std::left << std::setw(22) << "scheme" << std::setw(12) << "lambda" << std::setw(16)
      << "analytic_pps" << std::setw(16) << "mc_pps" << std::setw(14) << "ci95_pps"
      << "design\n";
  for (const auto& id : schemes_for(config, c)) {
    const SchemeConfig sc = resolve_design(config.scheme_config(id), config.params, traffic);
    std::string analytic = "-";
    std::string mc = "-";
    std::string ci = "-";
    if (config.mode != Mode::MonteCarlo) {
      auto a = analytic_sweep(sc, config.params, grid, config.master_seed);
      std::ostringstream value;
      value << std::setprecision(8) << a.front().mean_throughput;
      analytic = value.str();
      rows.push_back(a.front());
    }
    if (config.mode != Mode::Analytic) {
      auto m = run_sweep(sc, config.params, grid, options);
      std::ostringstream mean;
      std::ostringstream half;
      mean << std::setprecision(8) << m.front().mean_throughput;
      half << std::setprecision(4) << m.front().ci95_halfwidth;
      mc = mean.str();
      ci = half.str();
      rows.push_back(m.front());
    }
    out << std::left << std::setw(22) << id.label() << std::setw(12) << to_decimal(config.lambda)
        << std::setw(16) << analytic << std::setw(16) << mc << std::setw(14) << ci
        << design_text(sc) << '\n';
  }
  if (!config.output_path.empty()) {
    emit_csv(rows, config.output_path);
    err << "wrote " << rows.size() << " rows to " << config.output_path << '\n';
  }
  return 0;
}

int sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto grid = config.lambda_grid();
  const SweepOptions options{config.trials, config.master_seed, config.threads};
  std::vector<SweepRow> rows;
  for (const auto& id : config.schemes) {
    const SchemeConfig sc = config.scheme_config(id);
    if (config.mode != Mode::MonteCarlo) {
      auto a = analytic_sweep(sc, config.params, grid, config.master_seed);
      rows.insert(rows.end(), a.begin(), a.end());
    }
    if (config.mode != Mode::Analytic) {
      auto m = run_sweep(sc, config.params, grid, options);
      rows.insert(rows.end(), m.begin(), m.end());
    }
  }
  deliver(rows, config, out, err);
  return 0;
}

int cap(const RunConfig& config, std::ostream& out) {
  const auto& p = config.params;
  const TrafficModel traffic{config.lambda};
  out << "noma_device_cap " << to_decimal(noma_device_cap(p)) << '\n';
  const auto noma = design_noma(p, traffic, config.noma_snr_variant);
  const auto analysis = uncoordinated_throughput(noma, p, traffic);
  out << "noma_target_snr " << to_decimal(noma.target_snr) << '\n';
  out << "noma_expected_transmitting " << to_decimal(analysis.expected_transmitting) << '\n';
  out << "noma_expected_success " << to_decimal(analysis.expected_success) << '\n';
  for (auto scheme : {Scheme::Fdma, Scheme::Tdma}) {
    const auto d = optimize_design(scheme, p, traffic);
    const auto a = uncoordinated_throughput(d, p, traffic);
    const std::string prefix(to_string(scheme));
    out << prefix << "_access_prob " << to_decimal(d.access_prob) << '\n';
    out << prefix << "_partitions " << d.partitions << '\n';
    out << prefix << "_expected_success " << to_decimal(a.expected_success) << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::optional<std::string> env_seed) {
  CLI::App app{"Throughput of coordinated and uncoordinated uplink multiple access", "mabench"};
  app.require_subcommand(1);
  Invocation inv;
  auto* coordinated = app.add_subcommand("coordinated", "single-rate coordinated analysis");
  auto* uncoordinated = app.add_subcommand("uncoordinated", "single-rate uncoordinated analysis");
  auto* sweep_cmd = app.add_subcommand("sweep", "throughput versus arrival rate, as CSV");
  auto* cap_cmd = app.add_subcommand("cap", "closed-form NOMA cap and optimized designs");
  for (auto* cmd : {coordinated, uncoordinated, sweep_cmd, cap_cmd}) add_common_options(*cmd, inv);

  std::vector<const char*> argv{"mabench"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
  }

  try {
    const RunConfig config = load(inv, env_seed);
    if (*coordinated) return single_point(config, Coordination::Coordinated, out, err);
    if (*uncoordinated) return single_point(config, Coordination::Uncoordinated, out, err);
    if (*sweep_cmd) return sweep(config, out, err);
    return cap(config, out);
  } catch (const std::exception& e) {
    err << "mabench: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace mabench
