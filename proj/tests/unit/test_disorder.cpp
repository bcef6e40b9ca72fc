#include <catch_amalgamated.hpp>

#include <set>

#include "sshchain/disorder.hpp"

using namespace sshchain;

namespace {
const ChainSpec kA(Family::WeakCenter, 101, 8.0, 0.2);
const ChainSpec kB(Family::StrongCenter, 101, 8.0, 0.2);
}  // namespace

TEST_CASE("Mixer matches the SplitMix64 reference sequence") {
  // Published outputs of SplitMix64 seeded with 1234567.
  std::uint64_t state = 1234567;
  const std::uint64_t want[] = {6457827717110365317ULL, 3203168211198807973ULL};
  for (auto w : want) {
    CHECK(CounterRng::mix(state) == w);
    state += 0x9e3779b97f4a7c15ULL;
  }
}

TEST_CASE("Onsite draws are bounded, keyed and reproducible") {
  const DisorderConfig cfg{1.0, 50, 42};
  double sum = 0.0;
  std::size_t count = 0;
  for (int r = 0; r < 50; ++r) {
    const auto eps = draw_onsite(kA, cfg, r);
    CHECK(eps == draw_onsite(kA, cfg, r));
    for (double e : eps) {
      CHECK(std::abs(e) <= 4.0);
      sum += e;
      ++count;
    }
  }
  CHECK(std::abs(sum / count) < 0.1);
  CHECK(draw_onsite(kA, cfg, 0) != draw_onsite(kA, cfg, 1));
  CHECK(draw_onsite(kA, cfg, 0) != draw_onsite(kA, DisorderConfig{1.0, 50, 43}, 0));
  // Scaling E rescales the same underlying numbers.
  const auto half = draw_onsite(kA, DisorderConfig{0.5, 50, 42}, 3);
  const auto full = draw_onsite(kA, cfg, 3);
  for (std::size_t i = 0; i < half.size(); ++i) CHECK(half[i] == Catch::Approx(0.5 * full[i]));
}

TEST_CASE("Zero disorder yields exact zeros") {
  for (std::uint64_t seed : {0ULL, 1ULL, 999ULL}) {
    const auto eps = draw_onsite(kB, DisorderConfig{0.0, 3, seed}, 2);
    CHECK(eps == std::vector<double>(101, 0.0));
  }
}

TEST_CASE("Configuration validation") {
  CHECK_THROWS_AS(draw_onsite(kA, DisorderConfig{-1.0, 10, 1}, 0), ConfigError);
  CHECK_THROWS_AS(draw_onsite(kA, DisorderConfig{1.0, 0, 1}, 0), ConfigError);
  CHECK_THROWS_AS(draw_onsite(kA, DisorderConfig{1.0, 10, 1}, 10), ConfigError);
  CHECK_THROWS_AS(ensemble_average(kA, DisorderConfig{std::nan(""), 10, 1}), ConfigError);
}

TEST_CASE("Maximum occupancy of simple systems") {
  const auto dimer = eigendecompose(Hamiltonian({0.0, 0.0}, std::vector<double>{1.0}));
  for (double v : max_occupancy(dimer)) CHECK(v == Catch::Approx(0.5));
  const auto s = eigendecompose(build_hamiltonian(kA));
  const auto occ = max_occupancy(s);
  for (double v : occ) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  const double r = 0.2 / 8.0;
  double norm = 1.0;
  for (int k = 1; k <= 25; ++k) norm += 2.0 * std::pow(r, 2 * k);
  CHECK(occ[50] == Catch::Approx(1.0 / norm).epsilon(1e-10));
}

TEST_CASE("Zero disorder ensemble equals the clean chain exactly") {
  const auto res = ensemble_average(kA, DisorderConfig{0.0, 5, 1});
  CHECK(res.rho_bar == max_occupancy(eigendecompose(build_hamiltonian(kA))));
  for (double sd : res.std_energies) CHECK(sd == 0.0);
}

TEST_CASE("Ensemble is bit-identical for any thread count") {
  const DisorderConfig cfg{1.0, 24, 7, true};
  const auto one = ensemble_average(kB, cfg, 1);
  for (unsigned t : {2u, 3u, 8u}) {
    const auto many = ensemble_average(kB, cfg, t);
    CHECK(many.rho_bar == one.rho_bar);
    CHECK(many.avg_energies == one.avg_energies);
    CHECK(many.std_energies == one.std_energies);
  }
  REQUIRE(one.per_realization.size() == 24);
  for (const auto& r : one.per_realization) CHECK(std::is_sorted(r.energies.begin(), r.energies.end()));
}

TEST_CASE("Ensemble statistics are consistent with retained realizations") {
  const auto res = ensemble_average(kA, DisorderConfig{0.5, 10, 3, true});
  for (std::size_t i : {0u, 50u, 100u}) {
    double mean = 0.0, occ = 0.0;
    for (const auto& r : res.per_realization) {
      mean += r.energies[i];
      occ += r.max_occupancy[i];
    }
    CHECK(res.avg_energies[i] == Catch::Approx(mean / 10));
    CHECK(res.rho_bar[i] == Catch::Approx(occ / 10));
  }
}

TEST_CASE("Family (b) end sites stay protected at E = 1") {
  const auto res = ensemble_average(kB, DisorderConfig{1.0, 100, 7});
  CHECK(res.rho_bar.front() >= 0.95);
  CHECK(res.rho_bar.back() >= 0.95);
}

TEST_CASE("Sweep draws independent streams per disorder scale") {
  std::set<std::uint64_t> seeds;
  for (double e : {0.0, 0.1, 1.0, 1.5, 3.0}) seeds.insert(sweep_seed(1, e));
  CHECK(seeds.size() == 5);
  CHECK(sweep_seed(1, 1.0) == sweep_seed(1, 1.0));
  const double scales[] = {0.0, 1.0};
  const auto sweep = disorder_sweep(kA, scales, 4, 1, 2);
  REQUIRE(sweep.size() == 2);
  CHECK(sweep[1].rho_bar == ensemble_average(kA, DisorderConfig{1.0, 4, sweep_seed(1, 1.0)}).rho_bar);
}
