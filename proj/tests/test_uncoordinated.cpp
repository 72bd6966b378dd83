#include <doctest.h>

#include <cmath>

#include "mabench/uncoordinated.hpp"
#include "oracles.hpp"

using namespace mabench;

namespace {

UncoordinatedDesign fdma(double p, std::size_t n) { return {Scheme::Fdma, p, n, 0.0}; }
UncoordinatedDesign tdma(double p, std::size_t n) { return {Scheme::Tdma, p, n, 0.0}; }

}  // namespace

TEST_CASE("transmit probability") {
  const SystemParams p;
  // One partition, 1000 bits in 1 MHz-s: every device in the cell makes it.
  CHECK(fdma_tx_probability(fdma(1, 1), p) == 1.0);
  CHECK(tdma_tx_probability(tdma(1, 1), p) == 1.0);

  SystemParams tight;
  tight.payload_bits = 3e6;  // edge device needs SNR 7 on the full block
  const double expected = std::pow(1.0 / 7.0, 0.5);
  CHECK(tdma_tx_probability(tdma(1, 1), tight) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(fdma_tx_probability(fdma(1, 1), tight) == doctest::Approx(expected).epsilon(1e-14));

  // Finer partitions: FDMA gains N in SNR, TDMA does not.
  SystemParams mid;
  mid.payload_bits = 3e4;  // 100 partitions: edge needs SNR 7 on one
  CHECK(tdma_tx_probability(tdma(1, 100), mid) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(fdma_tx_probability(fdma(1, 100), mid) == 1.0);
  CHECK(fdma_tx_probability(fdma(1, 1000), mid) < tdma_tx_probability(tdma(1, 50), mid));

  SystemParams faint;
  faint.ref_snr = 0.001;  // N mu = 2^(L N / (W tau)) - 1 = 1 at N = 1000
  CHECK(fdma_tx_probability(fdma(1, 1000), faint) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tdma_tx_probability(tdma(1, 1000), p) == 1.0);
  CHECK(tdma_tx_probability(tdma(1, 1000), faint) < tdma_tx_probability(tdma(1, 500), faint));
  faint.ref_snr = 1e-12;
  CHECK(fdma_tx_probability(fdma(1, 1), faint) < 1e-4);
}

TEST_CASE("collision_probability examples") {
  CHECK(collision_probability(1.0, 1) == 0.0);
  CHECK(collision_probability(0.3, 10) == 0.0);
  CHECK(collision_probability(2.0, 1) == 1.0);
  CHECK(collision_probability(2.0, 2) == doctest::Approx(0.5));
  CHECK(collision_probability(1000.0, 1000) == doctest::Approx(0.63193651174077673).epsilon(1e-13));
  CHECK_THROWS_AS(collision_probability(3.0, 0), std::domain_error);
}

TEST_CASE("collision_probability is monotone") {
  for (std::size_t n : {1u, 2u, 7u, 100u, 1000u}) {
    double prev = 0.0;
    for (double k = 1.0; k < 3000.0; k *= 1.37) {
      const double pc = collision_probability(k, n);
      CHECK(pc >= prev);
      CHECK(pc >= 0.0);
      CHECK(pc <= 1.0);
      CHECK(collision_probability(k, n + 1) <= pc);
      prev = pc;
    }
  }
}

TEST_CASE("collision_probability matches exhaustive enumeration") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto e = oracle::enumerate_collisions(n, k);
      const double pc = collision_probability(static_cast<double>(k), n);
      CHECK(pc == doctest::Approx(e.tagged_collision).epsilon(1e-14));
      CHECK(static_cast<double>(k) * (1.0 - pc) ==
            doctest::Approx(e.expected_singletons).epsilon(1e-14));
    }
  }
}

TEST_CASE("uncoordinated_throughput") {
  const SystemParams p;
  const auto zero = uncoordinated_throughput(fdma(0.0, 1000), p, {1000.0});
  CHECK(zero.expected_success == 0.0);
  CHECK(zero.collision_prob == 0.0);

  const auto half = uncoordinated_throughput(fdma(0.5, 1000), p, {2000.0});
  CHECK(half.expected_active == 1000.0);
  CHECK(half.expected_transmitting == 1000.0);
  CHECK(half.expected_success == doctest::Approx(368.06348825922327).epsilon(1e-12));

  for (std::size_t n : {1u, 2u, 10u, 300u, 1000u}) {
    for (double lam : {0.0, 0.5, 10.0, 1e3, 1e5}) {
      for (double pc : {0.0, 0.01, 0.3, 1.0}) {
        for (const auto& d : {fdma(pc, n), tdma(pc, n)}) {
          const auto a = uncoordinated_throughput(d, p, {lam});
          CHECK(a.expected_success <= static_cast<double>(n) * (1 + 1e-12));
          CHECK(a.expected_success >= 0.0);
          CHECK(a.collision_prob >= 0.0);
          CHECK(a.collision_prob <= 1.0);
          const double q = tx_probability(d, p);
          CHECK(q >= 0.0);
          CHECK(q <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("optimal load sits at the stationary point") {
  // d/dn [n (1 - 1/N)^(n-1)] = 0 at n = -1/ln(1 - 1/N).
  const SystemParams p;
  const auto [pc, value] = best_access_probability(Scheme::Fdma, 1000, p, {2000.0});
  const double star = -1.0 / std::log1p(-1e-3);
  CHECK(star == doctest::Approx(999.49991662497359).epsilon(1e-14));
  CHECK(pc * 2000.0 == doctest::Approx(star).epsilon(1e-3));
  CHECK(value == doctest::Approx(star * std::pow(1 - 1e-3, star - 1)).epsilon(1e-12));
}

TEST_CASE("optimize_design") {
  const SystemParams p;
  SUBCASE("light load transmits always") {
    const auto d = optimize_design(Scheme::Fdma, p, {0.5});
    CHECK(d.access_prob == 1.0);
  }
  SUBCASE("no traffic") {
    const auto d = optimize_design(Scheme::Tdma, p, {0.0});
    CHECK(d.partitions == 1);
    CHECK(d.access_prob == 0.0);
  }
  SUBCASE("partition count respects the minima") {
    for (double lam : {1e2, 1e4, 1e6}) {
      CHECK(optimize_design(Scheme::Fdma, p, {lam}).partitions <= 1000);
      CHECK(optimize_design(Scheme::Tdma, p, {lam}).partitions <= 1000);
      CHECK_NOTHROW(optimize_design(Scheme::Fdma, p, {lam}).validate(p));
    }
  }
  CHECK_THROWS_AS(optimize_design(Scheme::Noma, p, {10.0}), std::invalid_argument);
}

TEST_CASE("optimize_design agrees with grid search") {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    SystemParams p;
    const std::size_t nmax = 1 + rng.below(64);
    p.payload_bits = std::pow(10.0, 3.0 + 1.5 * rng.uniform());
    p.ref_snr = std::pow(10.0, -1.0 + 2.0 * rng.uniform());
    p.pathloss_exp = 2.5 + 2.5 * rng.uniform();
    p.min_subchannel_hz = p.bandwidth_hz / static_cast<double>(nmax);
    p.min_slot_s = p.slot_s / static_cast<double>(nmax);
    const double lam = std::pow(10.0, 3.0 * rng.uniform());
    for (auto [scheme, access] : {std::pair{Scheme::Fdma, oracle::Access::Fdma},
                                  std::pair{Scheme::Tdma, oracle::Access::Tdma}}) {
      const auto d = optimize_design(scheme, p, {lam});
      const auto g = oracle::grid_optimize(access, nmax, p.bandwidth_hz, p.slot_s,
                                           p.payload_bits, p.ref_snr, p.pathloss_exp, lam);
      const double got = uncoordinated_throughput(d, p, {lam}).expected_success;
      CHECK(d.partitions == g.partitions);
      CHECK(d.access_prob == doctest::Approx(g.access_prob).epsilon(1e-5));
      CHECK(got == doctest::Approx(g.success).epsilon(1e-9));
    }
  }
}

TEST_CASE("NOMA SNR target") {
  const SystemParams p;
  const double cap = noma_device_cap(p);
  CHECK(cap == doctest::Approx(1442.1950986512279915).epsilon(1e-14));
  CHECK(noma_required_snr(1000.0, p) == doctest::Approx(2.2614452377472614e-3).epsilon(1e-12));
  CHECK(noma_required_snr(cap - 0.5, p) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(noma_required_snr(cap, p), InfeasibleError);
  CHECK_THROWS_AS(noma_required_snr(1500.0, p), InfeasibleError);
  CHECK_NOTHROW(noma_required_snr(cap + 0.5, p, TargetSnrForm::Rederived));

  SystemParams heavy;
  heavy.payload_bits = 1e6;  // beta = 1, cap = 1
  CHECK(noma_device_cap(heavy) == doctest::Approx(1.0));
  CHECK(noma_required_snr(1.0, heavy, TargetSnrForm::Rederived) == doctest::Approx(1.0));
  CHECK(noma_required_snr(0.5, heavy) == doctest::Approx(2.0));
  auto longer = p;
  longer.payload_bits *= 2;
  auto wider = p;
  wider.bandwidth_hz *= 2;
  CHECK(noma_device_cap(longer) < cap);
  CHECK(noma_device_cap(wider) > cap);

  for (double n : {1.0, 10.0, 500.0, 1400.0}) {
    // The rederived target gives exactly the required rate; the printed one
    // has one interferer of headroom.
    const double exact = noma_required_snr(n, p, TargetSnrForm::Rederived);
    CHECK(noma_min_rate(n, exact) == doctest::Approx(p.spectral_load()).epsilon(1e-9));
    CHECK(noma_decodable(n, exact, p));
    const double printed = noma_required_snr(n, p, TargetSnrForm::AsPrinted);
    CHECK(noma_min_rate(n + 1.0, printed) == doctest::Approx(p.spectral_load()).epsilon(1e-9));
    CHECK(noma_decodable(n, printed, p));
    CHECK_FALSE(noma_decodable(n + 2.0, exact, p));
  }
}

TEST_CASE("NOMA feasibility probability") {
  const SystemParams p;
  CHECK(noma_feasibility_probability(1.0, p) == 1.0);
  CHECK(noma_feasibility_probability(0.5, p) == 1.0);
  CHECK(noma_feasibility_probability(16.0, p) == doctest::Approx(0.25));
  CHECK(noma_feasibility_probability(1e12, p) < 1e-5);
  CHECK_THROWS_AS(noma_feasibility_probability(0.0, p), std::domain_error);
}

TEST_CASE("design_noma") {
  const SystemParams p;
  const double cap = noma_device_cap(p);
  for (auto form : {TargetSnrForm::AsPrinted, TargetSnrForm::Rederived}) {
    const double limit = cap + (form == TargetSnrForm::Rederived ? 1.0 : 0.0);
    for (double lam : {1.0, 100.0, 1000.0, 1440.0, 2000.0, 1e4, 1e6}) {
      const auto d = design_noma(p, {lam}, form);
      const auto a = uncoordinated_throughput(d, p, {lam});
      CHECK(a.expected_transmitting < limit);
      CHECK(a.expected_transmitting <= lam * (1 + 1e-12));
      CHECK(a.collision_prob == 0.0);
      // The target is sized for the expected transmitter count. Near the cap
      // the fixed point is steep, so one ulp in n moves lambda q(n) by ~1e-4.
      const double sized_for = limit - 1.0 / d.target_snr;
      CHECK(a.expected_transmitting == doctest::Approx(sized_for).epsilon(1e-6));
      CHECK(a.expected_transmitting <= sized_for * (1 + 1e-12));
    }
  }
  // Light load: everyone transmits and the cap is far away.
  const auto light = design_noma(p, {100.0});
  CHECK(uncoordinated_throughput(light, p, {100.0}).expected_success == doctest::Approx(100.0));
  // Heavy load approaches the cap from below.
  const auto heavy = design_noma(p, {1e6});
  const double s = uncoordinated_throughput(heavy, p, {1e6}).expected_success;
  CHECK(s < cap);
  CHECK(s > cap - 1.0);
}
