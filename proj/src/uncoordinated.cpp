#include "mabench/uncoordinated.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mabench/numeric.hpp"

namespace mabench {

std::string_view to_string(TargetSnrForm form) {
  return form == TargetSnrForm::AsPrinted ? "as_printed" : "rederived";
}

TargetSnrForm parse_target_snr_form(std::string_view text) {
  if (text == "as_printed") return TargetSnrForm::AsPrinted;
  if (text == "rederived") return TargetSnrForm::Rederived;
  throw std::invalid_argument("unknown NOMA SNR form '" + std::string(text) +
                              "' (expected as_printed or rederived)");
}

void UncoordinatedDesign::validate(const SystemParams& params) const {
  if (!(access_prob >= 0.0 && access_prob <= 1.0)) {
    throw std::invalid_argument("access_prob must lie in [0, 1]");
  }
  switch (scheme) {
    case Scheme::Fdma:
      if (partitions < 1 || partitions > max_subchannels(params)) {
        throw std::invalid_argument("FDMA partition count violates the minimum subchannel width");
      }
      break;
    case Scheme::Tdma:
      if (partitions < 1 || partitions > max_subslots(params)) {
        throw std::invalid_argument("TDMA partition count violates the minimum sub-slot length");
      }
      break;
    case Scheme::Noma:
      if (!(target_snr > 0.0)) throw std::invalid_argument("NOMA target_snr must be > 0");
      break;
  }
}

namespace {

// min(1, (ratio)^(2/gamma)) with ratio = available SNR / required SNR.
double placement_probability(double ratio, double pathloss_exp) {
  if (!(ratio > 0.0)) return 0.0;
  if (ratio >= 1.0) return 1.0;
  return std::pow(ratio, 2.0 / pathloss_exp);
}

// SNR a cell-edge device must reach on one of N partitions.
double partition_required_snr(std::size_t partitions, const SystemParams& params) {
  return std::expm1(params.spectral_load() * static_cast<double>(partitions) * std::numbers::ln2);
}

double expected_success(double transmitters, std::size_t partitions) {
  return transmitters * (1.0 - collision_probability(transmitters, partitions));
}

}  // namespace

double fdma_tx_probability(const UncoordinatedDesign& design, const SystemParams& params) {
  const double n = static_cast<double>(design.partitions);
  return placement_probability(n * params.ref_snr / partition_required_snr(design.partitions, params),
                               params.pathloss_exp);
}

double tdma_tx_probability(const UncoordinatedDesign& design, const SystemParams& params) {
  return placement_probability(params.ref_snr / partition_required_snr(design.partitions, params),
                               params.pathloss_exp);
}

double noma_feasibility_probability(double target_snr, const SystemParams& params) {
  if (!(target_snr > 0.0)) throw std::domain_error("target SNR must be > 0");
  return placement_probability(params.ref_snr / target_snr, params.pathloss_exp);
}

double tx_probability(const UncoordinatedDesign& design, const SystemParams& params) {
  switch (design.scheme) {
    case Scheme::Fdma: return fdma_tx_probability(design, params);
    case Scheme::Tdma: return tdma_tx_probability(design, params);
    case Scheme::Noma: return noma_feasibility_probability(design.target_snr, params);
  }
  return 0.0;
}

double collision_probability(double transmitters, std::size_t partitions) {
  if (partitions < 1) throw std::domain_error("collision_probability: need at least one partition");
  const double others = std::max(transmitters, 1.0) - 1.0;
  if (others == 0.0) return 0.0;
  const double n = static_cast<double>(partitions);
  // (1 - 1/N)^x via log1p keeps precision for large N.
  return -std::expm1(others * std::log1p(-1.0 / n));
}

UncoordinatedAnalysis uncoordinated_throughput(const UncoordinatedDesign& design,
                                               const SystemParams& params,
                                               const TrafficModel& traffic) {
  UncoordinatedAnalysis out;
  out.expected_active = design.access_prob * traffic.expected_arrivals(params.slot_s);
  out.expected_transmitting = out.expected_active * tx_probability(design, params);
  if (design.scheme == Scheme::Noma) {
    // All-or-nothing SIC: either every transmitter clears the target or none does.
    const bool ok = out.expected_transmitting == 0.0 ||
                    noma_decodable(out.expected_transmitting, design.target_snr, params);
    out.collision_prob = ok ? 0.0 : 1.0;
  } else {
    out.collision_prob = collision_probability(out.expected_transmitting, design.partitions);
  }
  out.expected_success = out.expected_transmitting * (1.0 - out.collision_prob);
  return out;
}

std::pair<double, double> best_access_probability(Scheme scheme, std::size_t partitions,
                                                  const SystemParams& params,
                                                  const TrafficModel& traffic) {
  UncoordinatedDesign probe{scheme, 1.0, partitions, 0.0};
  const double reachable = traffic.expected_arrivals(params.slot_s) * tx_probability(probe, params);
  if (!(reachable > 0.0)) return {0.0, 0.0};
  const auto success = [&](double p) { return expected_success(p * reachable, partitions); };
  auto [p, value] = numeric::golden_section_max(success, 0.0, 1.0);
  // Unimodal in p: when the peak lies at or beyond p = 1 the search only
  // approaches the boundary.
  if (const double full = success(1.0); full >= value) return {1.0, full};
  return {p, value};
}

UncoordinatedDesign optimize_design(Scheme scheme, const SystemParams& params,
                                    const TrafficModel& traffic) {
  if (scheme == Scheme::Noma) {
    throw std::invalid_argument("optimize_design: NOMA designs come from design_noma");
  }
  const std::size_t max_n =
      scheme == Scheme::Fdma ? max_subchannels(params) : max_subslots(params);
  UncoordinatedDesign best{scheme, 0.0, 1, 0.0};
  double best_value = -1.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto [p, value] = best_access_probability(scheme, n, params, traffic);
    if (value > best_value + 1e-12 * std::max(1.0, best_value)) {
      best_value = value;
      best.access_prob = p;
      best.partitions = n;
    }
  }
  return best;
}

double noma_device_cap(const SystemParams& params) { return 1.0 / required_sinr(params); }

double noma_required_snr(double transmitters, const SystemParams& params, TargetSnrForm form) {
  const double interferers = form == TargetSnrForm::AsPrinted ? transmitters : transmitters - 1.0;
  const double headroom = noma_device_cap(params) - interferers;
  if (!(headroom > 0.0)) {
    throw InfeasibleError("NOMA load of " + std::to_string(transmitters) +
                          " transmitters exceeds the device cap");
  }
  return 1.0 / headroom;
}

double noma_min_rate(double transmitters, double target_snr) {
  return std::log2(1.0 + target_snr / (1.0 + (transmitters - 1.0) * target_snr));
}

bool noma_decodable(double transmitters, double target_snr, const SystemParams& params) {
  if (transmitters <= 0.0) return true;
  const double sinr = target_snr / (1.0 + (transmitters - 1.0) * target_snr);
  return sinr >= required_sinr(params) * (1.0 - kBudgetSlack);
}

UncoordinatedDesign design_noma(const SystemParams& params, const TrafficModel& traffic,
                                TargetSnrForm form) {
  const double offered = traffic.expected_arrivals(params.slot_s);
  const double limit =
      noma_device_cap(params) + (form == TargetSnrForm::Rederived ? 1.0 : 0.0);
  const auto transmitting = [&](double n) {
    return offered * noma_feasibility_probability(noma_required_snr(n, params, form), params);
  };
  UncoordinatedDesign design{Scheme::Noma, 1.0, 1, 0.0};
  double load = 0.0;
  if (offered < limit && transmitting(offered) >= offered) {
    load = offered;
  } else {
    // transmitting(n) - n is decreasing in n and negative near the limit.
    double hi = std::min(offered, std::nextafter(limit, 0.0));
    double lo = 0.0;
    for (int i = 0; i < 400; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (transmitting(mid) - mid >= 0.0 ? lo : hi) = mid;
    }
    // The upper end never overstates the transmitters the target can carry.
    load = hi;
  }
  design.target_snr = noma_required_snr(load, params, form);
  return design;
}

}  // namespace mabench
