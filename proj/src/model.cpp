#include "mabench/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mabench {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(name) + " must be finite and > 0, got " +
                                std::to_string(value));
  }
}

}  // namespace

void SystemParams::validate() const {
  require_positive(bandwidth_hz, "bandwidth_hz");
  require_positive(slot_s, "slot_s");
  require_positive(payload_bits, "payload_bits");
  require_positive(ref_snr, "ref_snr");
  require_positive(pathloss_exp, "pathloss_exp");
  require_positive(min_slot_s, "min_slot_s");
  require_positive(min_subchannel_hz, "min_subchannel_hz");
  // Gain moments under uniform placement are finite only for gamma > 2.
  if (!(pathloss_exp > 2.0)) {
    throw std::invalid_argument("pathloss_exp must be > 2, got " + std::to_string(pathloss_exp));
  }
  if (min_slot_s > slot_s) {
    throw std::invalid_argument("min_slot_s must not exceed slot_s");
  }
  if (min_subchannel_hz > bandwidth_hz) {
    throw std::invalid_argument("min_subchannel_hz must not exceed bandwidth_hz");
  }
}

double required_sinr(const SystemParams& params) {
  return std::expm1(params.spectral_load() * std::numbers::ln2);
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng Rng::substream(std::uint64_t master_seed, std::uint64_t trial_index) {
  // Version word keeps streams distinct if the derivation ever changes.
  constexpr std::uint32_t kVersion = 1;
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(trial_index),
                    static_cast<std::uint32_t>(trial_index >> 32), kVersion};
  Rng rng(0);
  rng.engine_.seed(seq);
  return rng;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform_open_closed() { return 1.0 - uniform(); }

std::uint64_t Rng::below(std::uint64_t n) {
  std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
  return dist(engine_);
}

bool Rng::bernoulli(double p) { return uniform() < p; }

std::uint64_t Rng::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(engine_);
}

double channel_gain(double normalized_distance, double pathloss_exp) {
  if (!(normalized_distance > 0.0) || normalized_distance > 1.0) {
    throw std::domain_error("normalized distance must lie in (0, 1], got " +
                            std::to_string(normalized_distance));
  }
  if (!(pathloss_exp > 0.0)) {
    throw std::domain_error("path-loss exponent must be > 0");
  }
  return std::pow(normalized_distance, -pathloss_exp);
}

double distance_from_uniform(double v) {
  if (!(v > 0.0) || v > 1.0) throw std::domain_error("uniform draw must lie in (0, 1]");
  return std::sqrt(v);
}

std::vector<double> sample_placement(std::size_t count, Rng& rng) {
  std::vector<double> out(count);
  for (auto& u : out) u = distance_from_uniform(rng.uniform_open_closed());
  return out;
}

std::uint64_t sample_arrivals(const TrafficModel& traffic, double slot_s, Rng& rng) {
  if (traffic.arrival_rate < 0.0) {
    throw std::domain_error("arrival rate must be >= 0");
  }
  return rng.poisson(traffic.expected_arrivals(slot_s));
}

double received_snr(double normalized_power, double bandwidth_ratio, double ref_snr,
                    double gain) {
  if (normalized_power < 0.0 || normalized_power > 1.0) {
    throw std::domain_error("normalized power must lie in [0, 1]");
  }
  if (bandwidth_ratio < 1.0) {
    throw std::domain_error("transmission bandwidth exceeds the system bandwidth");
  }
  return normalized_power * bandwidth_ratio * ref_snr * gain;
}

DeviceSet DeviceSet::from_gains(std::vector<double> gains) {
  for (double g : gains) {
    if (!(g >= 1.0) || !std::isfinite(g)) {
      throw std::invalid_argument("device gain must be finite and >= 1, got " +
                                  std::to_string(g));
    }
  }
  std::sort(gains.begin(), gains.end(), std::greater<>());
  return DeviceSet(std::move(gains));
}

DeviceSet DeviceSet::from_distances(std::span<const double> normalized_distances,
                                    double pathloss_exp) {
  std::vector<double> gains;
  gains.reserve(normalized_distances.size());
  for (double u : normalized_distances) gains.push_back(channel_gain(u, pathloss_exp));
  return from_gains(std::move(gains));
}

DeviceSet DeviceSet::sample(std::size_t count, double pathloss_exp, Rng& rng) {
  const auto distances = sample_placement(count, rng);
  return from_distances(distances, pathloss_exp);
}

DeviceSet DeviceSet::strongest(std::size_t k) const {
  k = std::min(k, gains_.size());
  return DeviceSet(std::vector<double>(gains_.begin(), gains_.begin() + static_cast<long>(k)));
}

}  // namespace mabench
