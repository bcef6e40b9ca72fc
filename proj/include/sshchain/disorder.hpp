#pragma once

// Static diagonal disorder: eps_i = E * strong * d_i with d_i ~ U(-1/2, 1/2).
//
// Every draw is a pure function of (seed, realization, site), so ensembles are
// identical regardless of how realizations are scheduled across threads.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sshchain/chain.hpp"
#include "sshchain/error.hpp"
#include "sshchain/spectral.hpp"

namespace sshchain {

/// Stateless keyed generator built from the SplitMix64 finalizer.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) noexcept : key_(mix(seed)) {}

  static constexpr std::uint64_t mix(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  constexpr std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const noexcept {
    return mix(mix(key_ ^ stream) ^ (counter * 0xd1342543de82ef95ULL));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t stream, std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

struct DisorderConfig {
  double e_scale = 0.0;
  int realizations = 100;
  std::uint64_t seed = 1;
  /// Keep per-realization spectra and occupancies in the result.
  bool retain_realizations = false;

  void validate() const {
    if (!(e_scale >= 0.0) || !std::isfinite(e_scale)) throw ConfigError("disorder scale E must be >= 0");
    if (realizations < 1) throw ConfigError("realizations must be >= 1");
  }
};

inline std::vector<double> draw_onsite(const ChainSpec& spec, const DisorderConfig& cfg,
                                       int realization) {
  cfg.validate();
  if (realization < 0 || realization >= cfg.realizations)
    throw ConfigError("realization index " + std::to_string(realization) + " out of range");
  const auto n = static_cast<std::size_t>(spec.n_sites());
  std::vector<double> eps(n, 0.0);
  if (cfg.e_scale == 0.0) return eps;
  const CounterRng rng(cfg.seed);
  const double amplitude = cfg.e_scale * spec.strong();
  for (std::size_t i = 0; i < n; ++i)
    eps[i] = amplitude * (rng.uniform(static_cast<std::uint64_t>(realization), i) - 0.5);
  return eps;
}

/// max_n |<i|phi_n>|^2 for every site i.
inline std::vector<double> max_occupancy(const Spectrum& s) {
  const Eigen::MatrixXd prob = s.states().array().square();
  std::vector<double> out(s.size());
  for (Eigen::Index i = 0; i < prob.rows(); ++i) out[i] = prob.row(i).maxCoeff();
  return out;
}

struct RealizationSummary {
  std::vector<double> energies;       // sorted
  std::vector<double> max_occupancy;  // per site
};

struct DisorderResult {
  double e_scale = 0.0;
  int realizations = 0;
  std::vector<double> rho_bar;
  std::vector<double> avg_energies;
  std::vector<double> std_energies;  // population standard deviation
  std::vector<RealizationSummary> per_realization;  // filled when retained

  /// Mean of the std of the lowest and highest level, a measure of band spread.
  double band_edge_spread() const {
    return 0.5 * (std_energies.front() + std_energies.back());
  }
};

namespace detail {

inline RealizationSummary run_realization(const ChainSpec& spec, const DisorderConfig& cfg, int r) {
  const auto onsite = draw_onsite(spec, cfg, r);
  Spectrum s = [&] {
    try {
      return eigendecompose(build_hamiltonian(spec, std::span<const double>(onsite)));
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " (disorder realization " + std::to_string(r) + ")",
                        e.eigen_index(), e.iterations());
    }
  }();
  for (std::size_t n = 0; n < s.size(); ++n) {
    const double norm2 = s.state(n).squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-10)
      throw StructuralError("realization " + std::to_string(r) + ": state " + std::to_string(n) +
                            " has norm^2 " + std::to_string(norm2));
  }
  return {std::vector<double>(s.energies().begin(), s.energies().end()), max_occupancy(s)};
}

}  // namespace detail

/// Ensemble averages over cfg.realizations independent disorder draws.
///
/// Realizations run on `threads` workers (0 = hardware concurrency); the
/// reduction always proceeds in realization order, so the result is
/// bit-identical for any thread count.
inline DisorderResult ensemble_average(const ChainSpec& spec, const DisorderConfig& cfg,
                                       unsigned threads = 0) {
  cfg.validate();
  const int count = cfg.realizations;
  std::vector<RealizationSummary> runs(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next.fetch_add(1); r < count; r = next.fetch_add(1)) {
      try {
        runs[r] = detail::run_realization(spec, cfg, r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  const auto n = static_cast<std::size_t>(spec.n_sites());
  DisorderResult out;
  out.e_scale = cfg.e_scale;
  out.realizations = count;
  out.rho_bar.assign(n, 0.0);
  out.avg_energies.assign(n, 0.0);
  out.std_energies.assign(n, 0.0);
  // Means are accumulated relative to the first realization so that identical
  // realizations reproduce their values exactly.
  const auto& ref = runs.front();
  for (const auto& run : runs) {
    for (std::size_t i = 0; i < n; ++i) {
      out.rho_bar[i] += run.max_occupancy[i] - ref.max_occupancy[i];
      out.avg_energies[i] += run.energies[i] - ref.energies[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.rho_bar[i] = ref.max_occupancy[i] + out.rho_bar[i] / count;
    out.avg_energies[i] = ref.energies[i] + out.avg_energies[i] / count;
  }
  for (const auto& run : runs)
    for (std::size_t i = 0; i < n; ++i) {
      const double dev = run.energies[i] - out.avg_energies[i];
      out.std_energies[i] += dev * dev;
    }
  for (auto& v : out.std_energies) v = std::sqrt(v / count);
  if (cfg.retain_realizations) out.per_realization = std::move(runs);
  return out;
}

/// Seed for the ensemble at disorder scale `e_scale` within a sweep, so each
/// scale draws its own independent realizations.
inline std::uint64_t sweep_seed(std::uint64_t seed, double e_scale) {
  return CounterRng::mix(seed ^ CounterRng::mix(std::bit_cast<std::uint64_t>(e_scale)));
}

inline std::vector<DisorderResult> disorder_sweep(const ChainSpec& spec, std::span<const double> e_scales,
                                                  int realizations, std::uint64_t seed,
                                                  unsigned threads = 0) {
  std::vector<DisorderResult> out;
  for (double e : e_scales) {
    DisorderConfig cfg{e, realizations, sweep_seed(seed, e)};
    out.push_back(ensemble_average(spec, cfg, threads));
  }
  return out;
}

}  // namespace sshchain
