#include "mabench/coordinated.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mabench/numeric.hpp"

namespace mabench {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Fdma: return "fdma";
    case Scheme::Tdma: return "tdma";
    case Scheme::Noma: return "noma";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  std::string lower(text);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "fdma") return Scheme::Fdma;
  if (lower == "tdma") return Scheme::Tdma;
  if (lower == "noma") return Scheme::Noma;
  throw std::invalid_argument("unknown scheme '" + std::string(text) + "'");
}

double CoordinatedAllocation::resource_used() const {
  double sum = 0.0;
  for (const auto& d : per_device) sum += d.resource;
  return sum;
}

namespace {

// log2(1 + x); 1 + x rounds harmlessly once x > 0.5 and log2 is much
// cheaper than log1p.
double log2_1p(double x) { return x > 0.5 ? std::log2(1.0 + x) : std::log1p(x) / std::numbers::ln2; }

std::size_t floor_ratio(double num, double den) {
  // 1.0 / 1e-3 must give 1000, not 999.
  return static_cast<std::size_t>(std::floor(num / den * (1.0 + 1e-12)));
}

// Greedy strongest-first packing of per-device shares into `budget`.
template <class Share>
CoordinatedAllocation pack_prefix(Scheme scheme, const DeviceSet& devices, double budget,
                                  double minimum, Share&& share) {
  CoordinatedAllocation out;
  out.scheme = scheme;
  const double limit = budget * (1.0 + kBudgetSlack);
  double used = 0.0;
  for (double g : devices.gains()) {
    const std::optional<double> need = share(g);
    if (!need) continue;  // cannot be served at any share
    const double alloc = std::max(*need, minimum);
    if (used + alloc > limit) break;
    used += alloc;
    out.per_device.push_back({g, alloc});
  }
  out.admitted = out.per_device.size();
  return out;
}

}  // namespace

std::size_t max_subchannels(const SystemParams& params) {
  return floor_ratio(params.bandwidth_hz, params.min_subchannel_hz);
}

std::size_t max_subslots(const SystemParams& params) {
  return floor_ratio(params.slot_s, params.min_slot_s);
}

std::optional<double> fdma_min_bandwidth(double gain, const SystemParams& params) {
  const double snr_full_band = params.ref_snr * params.bandwidth_hz * gain;
  // w * log2(1 + c/w) increases towards c / ln 2 as w grows.
  if (params.payload_bits >= params.slot_s * snr_full_band / std::numbers::ln2) {
    return std::nullopt;
  }
  const auto excess = [&](double w) {
    return w * params.slot_s * log2_1p(snr_full_band / w) - params.payload_bits;
  };
  // Starting bracket around a few fixed-point steps on the spectral
  // efficiency s = L/(tau w), which satisfies s = log2(1 + a s).
  const double a = snr_full_band * params.slot_s / params.payload_bits;
  double s = std::log2(1.0 + a);
  for (int i = 0; i < 10; ++i) s = std::log2(1.0 + a * s);
  const double guess = params.payload_bits / (params.slot_s * s);
  double lo = (1.0 - 1e-6) * guess;
  double hi = (1.0 + 1e-6) * guess;
  for (int i = 0; i < 4096 && excess(lo) > 0.0; ++i) lo *= 0.5;
  for (int i = 0; i < 4096 && excess(hi) < 0.0; ++i) hi *= 2.0;
  if (excess(lo) > 0.0 || excess(hi) < 0.0) {
    throw std::runtime_error("fdma_min_bandwidth: failed to bracket the root");
  }
  return numeric::bisect_increasing(excess, lo, hi, 1e-14);
}

double fdma_bandwidth_residual(double bandwidth, double gain, const SystemParams& params) {
  const double lhs = params.payload_bits / (params.slot_s * bandwidth);
  const double rhs =
      std::log1p(params.ref_snr * params.bandwidth_hz / bandwidth * gain) / std::numbers::ln2;
  return std::abs(lhs - rhs) / lhs;
}

CoordinatedAllocation fdma_kmax(const DeviceSet& devices, const SystemParams& params,
                                bool enforce_minimum) {
  const double minimum = enforce_minimum ? params.min_subchannel_hz : 0.0;
  return pack_prefix(Scheme::Fdma, devices, params.bandwidth_hz, minimum,
                     [&](double g) { return fdma_min_bandwidth(g, params); });
}

double tdma_min_time(double gain, const SystemParams& params) {
  const double snr = params.ref_snr * gain;
  if (!(snr > 0.0)) throw std::domain_error("tdma_min_time: mu * g must be > 0");
  return params.payload_bits / (params.bandwidth_hz * log2_1p(snr));
}

CoordinatedAllocation tdma_kmax(const DeviceSet& devices, const SystemParams& params,
                                bool enforce_minimum) {
  const double minimum = enforce_minimum ? params.min_slot_s : 0.0;
  return pack_prefix(Scheme::Tdma, devices, params.slot_s, minimum,
                     [&](double g) -> std::optional<double> { return tdma_min_time(g, params); });
}

std::vector<double> noma_power_allocation(const DeviceSet& devices, const SystemParams& params) {
  const double beta = required_sinr(params);
  const double load = params.spectral_load();
  const std::size_t k = devices.size();
  std::vector<double> power(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double later = static_cast<double>(k - 1 - i);
    power[i] = std::exp2(later * load) * beta / (params.ref_snr * devices[i]);
  }
  return power;
}

CoordinatedAllocation noma_kmax(const DeviceSet& devices, const SystemParams& params) {
  // In logs, P_i(K) = (K-1-i) r ln2 + ln(beta/mu) - ln g_i, so the largest
  // power over the prefix is (K-1) r ln2 + ln(beta/mu) + max_i(-i r ln2 - ln g_i).
  const double step = params.spectral_load() * std::numbers::ln2;
  const double offset = std::log(required_sinr(params) / params.ref_snr);
  const double slack = std::log1p(kBudgetSlack);
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  for (std::size_t i = 0; i < devices.size(); ++i) {
    worst = std::max(worst, -static_cast<double>(i) * step - std::log(devices[i]));
    if (static_cast<double>(i) * step + offset + worst > slack) break;
    k = i + 1;
  }
  CoordinatedAllocation out;
  out.scheme = Scheme::Noma;
  out.admitted = k;
  const DeviceSet admitted = devices.strongest(k);
  const auto power = noma_power_allocation(admitted, params);
  out.per_device.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.per_device.push_back({admitted[i], power[i]});
  return out;
}

CoordinatedAllocation coordinated_kmax(Scheme scheme, const DeviceSet& devices,
                                       const SystemParams& params, bool enforce_minimum) {
  switch (scheme) {
    case Scheme::Fdma: return fdma_kmax(devices, params, enforce_minimum);
    case Scheme::Tdma: return tdma_kmax(devices, params, enforce_minimum);
    case Scheme::Noma: return noma_kmax(devices, params);
  }
  throw std::invalid_argument("coordinated_kmax: bad scheme");
}

double coordinated_quantile_served(Scheme scheme, const SystemParams& params,
                                   const TrafficModel& traffic, bool enforce_minimum) {
  const auto k = static_cast<std::size_t>(std::llround(traffic.expected_arrivals(params.slot_s)));
  std::vector<double> gains(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double area = (static_cast<double>(i) + 0.5) / static_cast<double>(k);
    gains[i] = std::pow(area, -params.pathloss_exp / 2.0);
  }
  const auto devices = DeviceSet::from_gains(std::move(gains));
  return static_cast<double>(coordinated_kmax(scheme, devices, params, enforce_minimum).admitted);
}

}  // namespace mabench
