#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's numerics.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace oracle {

/// Two-sided Kolmogorov-Smirnov statistic of `samples` against `cdf`.
template <class Cdf>
double ks_statistic(std::vector<double> samples, Cdf&& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Asymptotic 1% critical value.
inline double ks_critical_1pct(std::size_t n) { return 1.62762 / std::sqrt(static_cast<double>(n)); }

/// Minimum FDMA bandwidth by plain bisection on the spectral efficiency s,
/// the positive root of 2^s - 1 = a s with a = mu W g tau / L. Always runs
/// `iterations` halvings in long double. Returns 0 when no root exists.
inline double fdma_bandwidth(double gain, double bandwidth, double slot, double bits,
                             double ref_snr, int iterations = 1000) {
  using R = long double;
  const R a = static_cast<R>(ref_snr) * bandwidth * gain * slot / bits;
  const R ln2 = std::log(R(2));
  if (a <= ln2) return 0.0;  // slope of 2^s - 1 at 0 is ln 2
  const auto h = [&](R s) { return std::expm1(s * ln2) - a * s; };
  R lo = 1e-300L;
  R hi = 1;
  while (h(hi) <= 0) hi *= 2;
  for (int i = 0; i < iterations; ++i) {
    const R mid = (lo + hi) / 2;
    (h(mid) < 0 ? lo : hi) = mid;
  }
  const R s = (lo + hi) / 2;
  return static_cast<double>(static_cast<R>(bits) / (static_cast<R>(slot) * s));
}

struct Enumerated {
  double tagged_collision = 0.0;    // P(device 0 shares its partition)
  double expected_singletons = 0.0;  // E[# partitions holding exactly one device]
};

/// Exhaustive over all N^n assignments of n devices to N partitions.
inline Enumerated enumerate_collisions(std::size_t partitions, std::size_t devices) {
  std::vector<std::size_t> pick(devices, 0);
  std::vector<std::size_t> load(partitions);
  std::uint64_t outcomes = 0;
  std::uint64_t tagged = 0;
  std::uint64_t singles = 0;
  while (true) {
    std::fill(load.begin(), load.end(), 0);
    for (auto p : pick) ++load[p];
    ++outcomes;
    if (devices > 0 && load[pick[0]] > 1) ++tagged;
    singles += static_cast<std::uint64_t>(std::count(load.begin(), load.end(), 1));
    std::size_t i = 0;
    while (i < devices && ++pick[i] == partitions) pick[i++] = 0;
    if (i == devices) break;
  }
  return {static_cast<double>(tagged) / static_cast<double>(outcomes),
          static_cast<double>(singles) / static_cast<double>(outcomes)};
}

enum class Access { Fdma, Tdma };

struct GridDesign {
  std::size_t partitions = 1;
  double access_prob = 0.0;
  double success = 0.0;
};

/// Grid search over every partition count 1..max_partitions and a two-level
/// access-probability grid (coarse, then fine around the best coarse cell).
/// Ties within 1e-12 relative go to the smaller partition count, then the
/// smaller access probability.
inline GridDesign grid_optimize(Access access, std::size_t max_partitions, double bandwidth,
                                double slot, double bits, double ref_snr, double pathloss,
                                double arrival_rate, std::size_t coarse = 4001,
                                std::size_t fine = 4001) {
  const double load = bits / (bandwidth * slot);
  GridDesign best{1, 0.0, -1.0};
  for (std::size_t n = 1; n <= max_partitions; ++n) {
    const double nn = static_cast<double>(n);
    // Edge device at full power on one partition.
    const double edge_snr = access == Access::Fdma ? ref_snr * nn : ref_snr;
    const double needed = std::pow(2.0, load * nn) - 1.0;
    const double q = std::min(1.0, std::pow(edge_snr / needed, 2.0 / pathloss));
    const double reach = arrival_rate * slot * q;
    const auto success = [&](double p) {
      const double m = p * reach;
      const double others = std::max(m, 1.0) - 1.0;
      return m * std::pow(1.0 - 1.0 / nn, others);
    };
    double bp = 0.0;
    double bv = success(0.0);
    const auto scan = [&](double a, double b, std::size_t pts) {
      for (std::size_t i = 0; i < pts; ++i) {
        const double p = a + (b - a) * static_cast<double>(i) / static_cast<double>(pts - 1);
        const double v = success(p);
        if (v > bv * (1.0 + 1e-12)) {
          bv = v;
          bp = p;
        }
      }
    };
    scan(0.0, 1.0, coarse);
    const double cell = 1.0 / static_cast<double>(coarse - 1);
    scan(std::max(0.0, bp - cell), std::min(1.0, bp + cell), fine);
    if (bv > best.success + 1e-12 * std::max(1.0, best.success)) best = {n, bp, bv};
  }
  return best;
}

}  // namespace oracle
