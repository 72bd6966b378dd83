#pragma once

// Seeded Monte Carlo engine. Each trial realizes one slot: Poisson arrivals,
// uniform placements, then the scheme's admission or random-access rule.
// Trial i of a run always draws from Rng::substream(master_seed, i), so a
// sweep reproduces bit for bit whatever the thread count.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mabench/coordinated.hpp"
#include "mabench/model.hpp"
#include "mabench/uncoordinated.hpp"

namespace mabench {

enum class Coordination { Coordinated, Uncoordinated };

struct SchemeId {
  Coordination coordination = Coordination::Coordinated;
  Scheme scheme = Scheme::Fdma;

  /// "coordinated-fdma", "uncoordinated-noma", ...
  std::string label() const;
  static SchemeId parse(std::string_view label);
  static std::vector<SchemeId> all();

  bool operator==(const SchemeId&) const = default;
};

struct SchemeConfig {
  SchemeId id;
  /// Coordinated FDMA/TDMA: pad shares up to the minimum subchannel/sub-slot.
  bool enforce_minimum = false;
  TargetSnrForm snr_form = TargetSnrForm::AsPrinted;
  /// Uncoordinated broadcast. Left empty, sweeps derive it per arrival rate.
  std::optional<UncoordinatedDesign> design;
};

/// Fills `config.design` for an uncoordinated scheme at this load: the
/// optimized (p_c, N) for FDMA/TDMA, the self-consistent SNR target for NOMA.
SchemeConfig resolve_design(SchemeConfig config, const SystemParams& params,
                            const TrafficModel& traffic);

struct TrialOutcome {
  std::uint64_t arrivals = 0;
  std::uint64_t served = 0;
  SchemeId scheme;
  std::uint64_t substream = 0;
};

TrialOutcome run_trial(const SchemeConfig& config, const SystemParams& params,
                       const TrafficModel& traffic, std::uint64_t master_seed,
                       std::uint64_t trial_index);

struct Summary {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1) standard deviation
  double ci95_halfwidth = 0.0;
};

/// Mean, sample standard deviation and normal-approximation 95% half-width
/// (1.96 s / sqrt(n)) of the served counts. Throws on an empty span.
Summary aggregate(std::span<const TrialOutcome> outcomes);

struct SweepRow {
  std::string scheme;
  double lambda = 0.0;
  std::uint64_t trials = 1;
  double mean_throughput = 0.0;  // packets per second
  double ci95_halfwidth = 0.0;   // packets per second
  std::uint64_t seed = 0;
  std::string params_digest;

  bool operator==(const SweepRow&) const = default;
};

/// Compact echo of every parameter that influences a row.
std::string params_digest(const SystemParams& params, const SchemeConfig& config);

struct SweepOptions {
  std::uint64_t trials = 10000;
  std::uint64_t master_seed = 1;
  /// 0 uses std::thread::hardware_concurrency().
  unsigned threads = 1;
};

/// All trial outcomes for one arrival rate, ordered by trial index.
std::vector<TrialOutcome> run_point(const SchemeConfig& config, const SystemParams& params,
                                    const TrafficModel& traffic, const SweepOptions& options);

/// One Monte Carlo row per arrival rate.
std::vector<SweepRow> run_sweep(const SchemeConfig& config, const SystemParams& params,
                                std::span<const double> lambda_grid,
                                const SweepOptions& options);

/// Closed-form value per arrival rate: expected successes for uncoordinated
/// schemes, the quantile-population K_max for coordinated ones. Rows are
/// labelled "<scheme>/analytic" with trials = 1 and zero half-width.
std::vector<SweepRow> analytic_sweep(const SchemeConfig& config, const SystemParams& params,
                                     std::span<const double> lambda_grid, std::uint64_t seed);

/// Expected packets per slot for one scheme and load (see analytic_sweep).
double analytic_served(const SchemeConfig& config, const SystemParams& params,
                       const TrafficModel& traffic);

}  // namespace mabench
