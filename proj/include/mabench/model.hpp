#pragma once

// System model shared by every access scheme: radio-resource constants,
// the distance-only channel law, uniform device placement in a disc and
// Poisson packet arrivals per slot.

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace mabench {

/// Radio resource and propagation constants.
///
/// Transmit powers everywhere in the library are normalized by the maximum
/// transmit power, so a power of 1.0 means "full power" and feasibility is
/// always "normalized power <= 1".
struct SystemParams {
  double bandwidth_hz = 1e6;
  double slot_s = 1.0;
  double payload_bits = 1000.0;
  double ref_snr = 1.0;  // linear; 0 dB
  double pathloss_exp = 4.0;
  double min_slot_s = 1e-3;
  double min_subchannel_hz = 1e3;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Spectral load L / (W * tau_s), in bits/s/Hz.
  double spectral_load() const { return payload_bits / (bandwidth_hz * slot_s); }

  bool operator==(const SystemParams&) const = default;
};

/// 2^(L/(W tau_s)) - 1: the SINR every device must reach when it is given
/// the whole resource block.
double required_sinr(const SystemParams& params);

/// Poisson traffic offered to one cell.
struct TrafficModel {
  double arrival_rate = 0.0;  // packets per second

  double expected_arrivals(double slot_s) const { return arrival_rate * slot_s; }
};

/// Seedable generator with independent per-trial substreams.
///
/// A substream is a pure function of (master_seed, trial_index), so trials
/// can be evaluated in any order or concurrently and still reproduce.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64/seed_seq-v1";

  explicit Rng(std::uint64_t seed);
  static Rng substream(std::uint64_t master_seed, std::uint64_t trial_index);

  /// Uniform on (0, 1].
  double uniform_open_closed();
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p);
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

/// Normalized channel gain (r/R)^-gamma for a device at normalized distance
/// u = r/R. Throws std::domain_error unless 0 < u <= 1 and gamma > 0.
double channel_gain(double normalized_distance, double pathloss_exp);

/// sqrt(v): maps a uniform draw v in (0, 1] to a normalized distance with
/// density 2u on (0, 1].
double distance_from_uniform(double v);

/// Inverse-CDF draw of normalized distances for devices uniform in the
/// unit disc: u = sqrt(v), v ~ U(0, 1]. Density of u is 2u.
std::vector<double> sample_placement(std::size_t count, Rng& rng);

/// Number of packets arriving in one slot, Poisson with mean lambda*tau_s.
std::uint64_t sample_arrivals(const TrafficModel& traffic, double slot_s, Rng& rng);

/// Received SNR p * (W/W_t) * mu * g for a device using a fraction
/// W_t/W of the band. `bandwidth_ratio` is W/W_t and must be >= 1.
double received_snr(double normalized_power, double bandwidth_ratio, double ref_snr,
                    double gain);

/// Contending devices as normalized gains, strongest first.
class DeviceSet {
 public:
  DeviceSet() = default;

  /// Sorts descending. Throws std::invalid_argument if any gain is < 1 or
  /// not finite.
  static DeviceSet from_gains(std::vector<double> gains);
  static DeviceSet from_distances(std::span<const double> normalized_distances,
                                  double pathloss_exp);
  /// Places `count` devices uniformly in the cell.
  static DeviceSet sample(std::size_t count, double pathloss_exp, Rng& rng);

  std::span<const double> gains() const { return gains_; }
  std::size_t size() const { return gains_.size(); }
  bool empty() const { return gains_.empty(); }
  double operator[](std::size_t i) const { return gains_[i]; }

  /// The k strongest devices.
  DeviceSet strongest(std::size_t k) const;

 private:
  explicit DeviceSet(std::vector<double> sorted) : gains_(std::move(sorted)) {}
  std::vector<double> gains_;
};

}  // namespace mabench
