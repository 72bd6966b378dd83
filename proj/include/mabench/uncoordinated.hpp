#pragma once

// Uncoordinated (grant-free) uplink access. The base station knows only the
// offered load. It broadcasts an access probability and a partition count
// for FDMA/TDMA, or a common received-SNR target for NOMA; each device then
// decides on its own whether it can afford to transmit.
//
// The analytical path treats expected counts as real numbers throughout.

#include <cstddef>
#include <stdexcept>

#include "mabench/coordinated.hpp"
#include "mabench/model.hpp"

namespace mabench {

/// Thrown when a requested NOMA load exceeds what any SNR target supports.
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// How the NOMA received-SNR target is derived from the transmitter count n.
///  - AsPrinted:  gamma0 = 1 / (1/beta - n)
///  - Rederived:  gamma0 = 1 / (1/beta - (n - 1)), the exact SIC threshold
///    for n equal-power transmitters.
enum class TargetSnrForm { AsPrinted, Rederived };

std::string_view to_string(TargetSnrForm form);
TargetSnrForm parse_target_snr_form(std::string_view text);

struct UncoordinatedDesign {
  Scheme scheme = Scheme::Fdma;
  double access_prob = 1.0;
  std::size_t partitions = 1;  // unused for NOMA
  double target_snr = 0.0;     // linear, NOMA only

  /// Throws std::invalid_argument on a design the broadcast cannot carry.
  void validate(const SystemParams& params) const;
};

struct UncoordinatedAnalysis {
  double expected_active = 0.0;
  double expected_transmitting = 0.0;
  double collision_prob = 0.0;
  double expected_success = 0.0;  // packets per slot
};

/// Probability that a device at a uniformly random position can close the
/// link on one of N equal subchannels at full power.
double fdma_tx_probability(const UncoordinatedDesign& design, const SystemParams& params);
/// Same for one of N equal sub-slots over the full band.
double tdma_tx_probability(const UncoordinatedDesign& design, const SystemParams& params);
/// Probability that a uniformly placed device reaches `target_snr` at the
/// base station without exceeding full power: min(1, (mu/gamma0)^(2/gamma)).
double noma_feasibility_probability(double target_snr, const SystemParams& params);
/// Dispatches on design.scheme.
double tx_probability(const UncoordinatedDesign& design, const SystemParams& params);

/// 1 - (1 - 1/N)^(max(n, 1) - 1) for n (possibly fractional) transmitters
/// choosing uniformly among N partitions. Throws std::domain_error if N < 1.
double collision_probability(double transmitters, std::size_t partitions);

/// Expected outcome of one slot under `design`.
UncoordinatedAnalysis uncoordinated_throughput(const UncoordinatedDesign& design,
                                               const SystemParams& params,
                                               const TrafficModel& traffic);

/// Access probability and partition count maximizing expected successes for
/// FDMA or TDMA. Ties go to the smaller partition count, then the smaller
/// access probability.
UncoordinatedDesign optimize_design(Scheme scheme, const SystemParams& params,
                                    const TrafficModel& traffic);

/// Best expected successes over the access probability for a fixed
/// partition count. Returns (access_prob, expected_success).
std::pair<double, double> best_access_probability(Scheme scheme, std::size_t partitions,
                                                  const SystemParams& params,
                                                  const TrafficModel& traffic);

/// Received SNR target that lets `transmitters` equal-power devices all be
/// decoded by SIC. Throws InfeasibleError beyond the device cap.
double noma_required_snr(double transmitters, const SystemParams& params,
                         TargetSnrForm form = TargetSnrForm::AsPrinted);

/// 1 / (2^(L/(W tau_s)) - 1): bound on simultaneous NOMA transmitters.
double noma_device_cap(const SystemParams& params);

/// Per-device rate log2(1 + gamma0 / (1 + (n - 1) gamma0)) of the weakest
/// stage of SIC with n equal received powers.
double noma_min_rate(double transmitters, double target_snr);

/// True when n transmitters at received SNR gamma0 each fit L bits in the
/// resource block (with kBudgetSlack relative tolerance).
bool noma_decodable(double transmitters, double target_snr, const SystemParams& params);

/// NOMA broadcast design for the expected load: the self-consistent
/// transmitter count n = lambda tau_s * P(feasible | gamma0(n)) and its
/// SNR target gamma0(n).
UncoordinatedDesign design_noma(const SystemParams& params, const TrafficModel& traffic,
                                TargetSnrForm form = TargetSnrForm::AsPrinted);

}  // namespace mabench
