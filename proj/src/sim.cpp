#include "mabench/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "mabench/format.hpp"

namespace mabench {

std::string SchemeId::label() const {
  std::string out = coordination == Coordination::Coordinated ? "coordinated-" : "uncoordinated-";
  out += to_string(scheme);
  return out;
}

SchemeId SchemeId::parse(std::string_view label) {
  const auto dash = label.find('-');
  if (dash == std::string_view::npos) {
    throw std::invalid_argument("scheme label must look like coordinated-fdma, got '" +
                                std::string(label) + "'");
  }
  const auto head = label.substr(0, dash);
  SchemeId id;
  if (head == "coordinated") {
    id.coordination = Coordination::Coordinated;
  } else if (head == "uncoordinated") {
    id.coordination = Coordination::Uncoordinated;
  } else {
    throw std::invalid_argument("unknown coordination '" + std::string(head) + "'");
  }
  id.scheme = parse_scheme(label.substr(dash + 1));
  return id;
}

std::vector<SchemeId> SchemeId::all() {
  std::vector<SchemeId> out;
  for (auto c : {Coordination::Coordinated, Coordination::Uncoordinated}) {
    for (auto s : {Scheme::Noma, Scheme::Fdma, Scheme::Tdma}) out.push_back({c, s});
  }
  return out;
}

SchemeConfig resolve_design(SchemeConfig config, const SystemParams& params,
                            const TrafficModel& traffic) {
  if (config.id.coordination != Coordination::Uncoordinated || config.design) return config;
  config.design = config.id.scheme == Scheme::Noma
                      ? design_noma(params, traffic, config.snr_form)
                      : optimize_design(config.id.scheme, params, traffic);
  return config;
}

namespace {

std::uint64_t random_access_served(const UncoordinatedDesign& design, const SystemParams& params,
                                   std::uint64_t arrivals, Rng& rng) {
  const std::size_t n = design.partitions;
  const double bandwidth_factor = design.scheme == Scheme::Fdma ? static_cast<double>(n) : 1.0;
  const double needed =
      std::expm1(params.spectral_load() * static_cast<double>(n) * std::numbers::ln2);
  std::vector<std::uint32_t> occupancy(n, 0);
  for (std::uint64_t k = 0; k < arrivals; ++k) {
    if (!rng.bernoulli(design.access_prob)) continue;
    const double g = channel_gain(distance_from_uniform(rng.uniform_open_closed()), params.pathloss_exp);
    if (needed > bandwidth_factor * params.ref_snr * g) continue;
    ++occupancy[rng.below(n)];
  }
  return static_cast<std::uint64_t>(std::count(occupancy.begin(), occupancy.end(), 1U));
}

std::uint64_t noma_random_access_served(const UncoordinatedDesign& design,
                                        const SystemParams& params, std::uint64_t arrivals,
                                        Rng& rng) {
  std::uint64_t transmitting = 0;
  for (std::uint64_t k = 0; k < arrivals; ++k) {
    if (!rng.bernoulli(design.access_prob)) continue;
    const double g = channel_gain(distance_from_uniform(rng.uniform_open_closed()), params.pathloss_exp);
    if (design.target_snr <= params.ref_snr * g) ++transmitting;
  }
  const auto n = static_cast<double>(transmitting);
  return noma_decodable(n, design.target_snr, params) ? transmitting : 0;
}

}  // namespace

TrialOutcome run_trial(const SchemeConfig& config, const SystemParams& params,
                       const TrafficModel& traffic, std::uint64_t master_seed,
                       std::uint64_t trial_index) {
  Rng rng = Rng::substream(master_seed, trial_index);
  TrialOutcome out;
  out.scheme = config.id;
  out.substream = trial_index;
  out.arrivals = sample_arrivals(traffic, params.slot_s, rng);
  if (config.id.coordination == Coordination::Coordinated) {
    const auto devices = DeviceSet::sample(out.arrivals, params.pathloss_exp, rng);
    out.served = coordinated_kmax(config.id.scheme, devices, params, config.enforce_minimum).admitted;
    return out;
  }
  if (!config.design) {
    throw std::invalid_argument("run_trial: uncoordinated scheme needs a design (resolve_design)");
  }
  const auto& design = *config.design;
  out.served = design.scheme == Scheme::Noma
                   ? noma_random_access_served(design, params, out.arrivals, rng)
                   : random_access_served(design, params, out.arrivals, rng);
  return out;
}

Summary aggregate(std::span<const TrialOutcome> outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("aggregate: no trial outcomes");
  Summary s;
  s.trials = outcomes.size();
  const auto n = static_cast<double>(s.trials);
  // Exact integer moments make the result independent of outcome order.
  unsigned __int128 total = 0;
  unsigned __int128 total_sq = 0;
  for (const auto& o : outcomes) {
    total += o.served;
    total_sq += static_cast<unsigned __int128>(o.served) * o.served;
  }
  s.mean = static_cast<double>(total) / n;
  if (s.trials > 1) {
    const unsigned __int128 scatter = total_sq * s.trials - total * total;  // n^2 * biased var
    s.stddev = std::sqrt(static_cast<double>(scatter) / (n * (n - 1.0)));
  }
  s.ci95_halfwidth = 1.96 * s.stddev / std::sqrt(n);
  return s;
}

std::string params_digest(const SystemParams& params, const SchemeConfig& config) {
  std::string out;
  const auto put = [&](std::string_view key, const std::string& value) {
    if (!out.empty()) out += ';';
    out += key;
    out += '=';
    out += value;
  };
  put("W", to_decimal(params.bandwidth_hz));
  put("tau", to_decimal(params.slot_s));
  put("L", to_decimal(params.payload_bits));
  put("mu", to_decimal(params.ref_snr));
  put("gamma", to_decimal(params.pathloss_exp));
  put("min_slot", to_decimal(params.min_slot_s));
  put("min_sub", to_decimal(params.min_subchannel_hz));
  put("minima", config.enforce_minimum ? "1" : "0");
  put("snr_form", std::string(to_string(config.snr_form)));
  return out;
}

std::vector<TrialOutcome> run_point(const SchemeConfig& config, const SystemParams& params,
                                    const TrafficModel& traffic, const SweepOptions& options) {
  const SchemeConfig resolved = resolve_design(config, params, traffic);
  std::vector<TrialOutcome> outcomes(options.trials);
  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(options.trials)));

  std::atomic<std::uint64_t> next{0};
  const auto work = [&] {
    for (std::uint64_t i = next++; i < options.trials; i = next++) {
      outcomes[i] = run_trial(resolved, params, traffic, options.master_seed, i);
    }
  };
  if (threads == 1) {
    work();
    return outcomes;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          work();
        } catch (...) {
          errors[t] = std::current_exception();
          next = options.trials;
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outcomes;
}

std::vector<SweepRow> run_sweep(const SchemeConfig& config, const SystemParams& params,
                                std::span<const double> lambda_grid,
                                const SweepOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
  std::vector<SweepRow> rows;
  rows.reserve(lambda_grid.size());
  const std::string digest = params_digest(params, config);
  for (double lambda : lambda_grid) {
    const TrafficModel traffic{lambda};
    const auto outcomes = run_point(config, params, traffic, options);
    const Summary s = aggregate(outcomes);
    rows.push_back({config.id.label(), lambda, s.trials, s.mean / params.slot_s,
                    s.ci95_halfwidth / params.slot_s, options.master_seed, digest});
  }
  return rows;
}

double analytic_served(const SchemeConfig& config, const SystemParams& params,
                       const TrafficModel& traffic) {
  if (config.id.coordination == Coordination::Coordinated) {
    return coordinated_quantile_served(config.id.scheme, params, traffic, config.enforce_minimum);
  }
  const SchemeConfig resolved = resolve_design(config, params, traffic);
  return uncoordinated_throughput(*resolved.design, params, traffic).expected_success;
}

std::vector<SweepRow> analytic_sweep(const SchemeConfig& config, const SystemParams& params,
                                     std::span<const double> lambda_grid, std::uint64_t seed) {
  std::vector<SweepRow> rows;
  const std::string digest = params_digest(params, config);
  for (double lambda : lambda_grid) {
    const double served = analytic_served(config, params, TrafficModel{lambda});
    rows.push_back({config.id.label() + "/analytic", lambda, 1, served / params.slot_s, 0.0, seed,
                    digest});
  }
  return rows;
}

}  // namespace mabench
