#pragma once

// Coordinated uplink access: the base station knows every device's gain and
// hands out the smallest resource share that still carries one packet per
// slot. Admission is strongest-first; a scheme's K_max is the longest prefix
// of the ordered devices whose shares fit in the resource block.

#include <optional>
#include <string_view>
#include <vector>

#include "mabench/model.hpp"

namespace mabench {

enum class Scheme { Fdma, Tdma, Noma };

std::string_view to_string(Scheme scheme);
/// Accepts "fdma", "tdma", "noma" (case-insensitive).
Scheme parse_scheme(std::string_view text);

/// Relative slack on resource budgets and power limits so that shares which
/// fill the budget exactly are not rejected by accumulated rounding.
inline constexpr double kBudgetSlack = 1e-9;

struct DeviceAllocation {
  double gain;
  /// Hz for FDMA, seconds for TDMA, normalized power for NOMA.
  double resource;
};

struct CoordinatedAllocation {
  Scheme scheme = Scheme::Fdma;
  std::size_t admitted = 0;
  std::vector<DeviceAllocation> per_device;

  double resource_used() const;
};

/// Largest subchannel count with W/N >= min_subchannel_hz.
std::size_t max_subchannels(const SystemParams& params);
/// Largest sub-slot count with tau_s/N >= min_slot_s.
std::size_t max_subslots(const SystemParams& params);

/// Smallest bandwidth w with L/(tau_s w) = log2(1 + mu (W/w) g). Returns
/// nullopt when L >= tau_s mu W g / ln 2: even infinite bandwidth cannot
/// carry the packet in one slot.
std::optional<double> fdma_min_bandwidth(double gain, const SystemParams& params);

/// Relative residual |lhs - rhs| / lhs of the bandwidth equation at w.
double fdma_bandwidth_residual(double bandwidth, double gain, const SystemParams& params);

CoordinatedAllocation fdma_kmax(const DeviceSet& devices, const SystemParams& params,
                                bool enforce_minimum);

/// L / (W log2(1 + mu g)): full-band, full-power transmission time.
double tdma_min_time(double gain, const SystemParams& params);

CoordinatedAllocation tdma_kmax(const DeviceSet& devices, const SystemParams& params,
                                bool enforce_minimum);

/// SIC power control for the given devices, decoded strongest first. Every
/// device reaches SINR exactly 2^(L/(W tau_s)) - 1 against the devices
/// decoded after it. Powers are normalized and may exceed 1.
std::vector<double> noma_power_allocation(const DeviceSet& devices, const SystemParams& params);

/// Largest K for which the K strongest devices are all power-feasible.
CoordinatedAllocation noma_kmax(const DeviceSet& devices, const SystemParams& params);

/// Dispatches to the scheme's K_max. NOMA ignores `enforce_minimum`.
CoordinatedAllocation coordinated_kmax(Scheme scheme, const DeviceSet& devices,
                                       const SystemParams& params, bool enforce_minimum);

/// Deterministic stand-in for the expected per-slot served count:
/// round(lambda tau_s) devices placed at the mid-quantiles of the placement
/// law, then the scheme's K_max. There is no closed form for the
/// coordinated schemes; this is what the analytic sweep mode reports.
double coordinated_quantile_served(Scheme scheme, const SystemParams& params,
                                   const TrafficModel& traffic, bool enforce_minimum);

}  // namespace mabench
