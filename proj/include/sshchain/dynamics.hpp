#pragma once

// Exact single-excitation dynamics by spectral decomposition (hbar = 1):
//   Psi(t) = sum_n exp(-i E_n t) <phi_n|Psi(0)> |phi_n>.
// Time arguments are measured in units of 1/energy_unit; pass the strong
// coupling to work in inverse-strong-coupling units.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "sshchain/chain.hpp"
#include "sshchain/disorder.hpp"
#include "sshchain/error.hpp"
#include "sshchain/spectral.hpp"

namespace sshchain {

using cplx = std::complex<double>;

class InitialState {
 public:
  enum class Kind { Site, Eigenstate, Custom };

  /// Excitation on one site, given by its symmetric label.
  static InitialState site(const ChainSpec& spec, int site) {
    const auto idx = static_cast<std::size_t>(spec.index_of(site));
    std::vector<cplx> amp(static_cast<std::size_t>(spec.n_sites()), cplx{});
    amp[idx] = 1.0;
    return InitialState(Kind::Site, idx, std::move(amp));
  }

  static InitialState eigenstate(const Spectrum& s, std::size_t n) {
    if (n >= s.size()) throw ConfigError("eigenstate index out of range");
    std::vector<cplx> amp(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) amp[i] = s.amplitude(i, n);
    return InitialState(Kind::Eigenstate, n, std::move(amp));
  }

  /// Arbitrary state; must have unit norm within 1e-10.
  static InitialState custom(std::vector<cplx> amplitudes) {
    double norm2 = 0.0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-10) throw ConfigError("initial state must be normalized");
    return InitialState(Kind::Custom, 0, std::move(amplitudes));
  }

  Kind kind() const noexcept { return kind_; }
  /// Site array index for Kind::Site, eigenstate index for Kind::Eigenstate.
  std::size_t label() const noexcept { return label_; }
  std::span<const cplx> amplitudes() const noexcept { return amp_; }
  std::size_t size() const noexcept { return amp_.size(); }

 private:
  InitialState(Kind kind, std::size_t label, std::vector<cplx> amp)
      : kind_(kind), label_(label), amp_(std::move(amp)) {}

  Kind kind_;
  std::size_t label_;
  std::vector<cplx> amp_;
};

/// The in-gap eigenstate with the largest weight on `site`.
inline std::size_t localized_state(const Spectrum& s, const ChainSpec& spec, int site) {
  const auto idx = static_cast<std::size_t>(spec.index_of(site));
  const EnergyWindows windows(spec);
  std::optional<std::size_t> best;
  double best_w = -1.0;
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (windows.classify(s.energy(n)) != BandLabel::InGap) continue;
    const double w = s.amplitude(idx, n) * s.amplitude(idx, n);
    if (w > best_w) {
      best_w = w;
      best = n;
    }
  }
  if (!best) throw StructuralError("no in-gap state found");
  return *best;
}

struct Trajectory {
  std::vector<double> times;
  std::vector<cplx> overlap;  // <Psi(0)|Psi(t)>
  std::vector<double> fidelity;
  std::vector<double> mirror_fidelity;  // |<M Psi(0)|Psi(t)>|^2
  std::vector<double> phase;            // unwrapped arg(overlap)
  std::vector<double> norm;
  double energy_unit = 1.0;
  /// Set when some step violates dt * max|E| < pi/4; the unwrapped phase is
  /// then unreliable.
  bool phase_aliased = false;
};

namespace detail {

struct Projections {
  std::vector<cplx> initial;  // <phi_n|Psi(0)>
  std::vector<cplx> mirror;   // <phi_n|M Psi(0)>
};

inline Projections project(const Spectrum& s, const InitialState& init) {
  if (init.size() != s.size()) throw ConfigError("initial state size does not match spectrum");
  const auto amp = init.amplitudes();
  const std::size_t n = s.size();
  Projections p{std::vector<cplx>(n), std::vector<cplx>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    cplx a{}, b{};
    for (std::size_t i = 0; i < n; ++i) {
      a += s.amplitude(i, k) * amp[i];
      b += s.amplitude(i, k) * amp[n - 1 - i];
    }
    p.initial[k] = a;
    p.mirror[k] = b;
  }
  return p;
}

inline void check_times(std::span<const double> times) {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] >= 0.0) || !std::isfinite(times[k]))
      throw ConfigError("times must be finite and non-negative");
    if (k > 0 && times[k] < times[k - 1]) throw ConfigError("times must be sorted");
  }
}

inline double max_abs_energy(const Spectrum& s) {
  double v = 0.0;
  for (double e : s.energies()) v = std::max(v, std::abs(e));
  return v;
}

}  // namespace detail

inline Trajectory evolve(const Spectrum& s, const InitialState& init, std::span<const double> times,
                         double energy_unit = 1.0) {
  detail::check_times(times);
  if (!(energy_unit > 0.0)) throw ConfigError("energy unit must be positive");
  const auto proj = detail::project(s, init);
  const std::size_t n = s.size();
  std::vector<double> weight(n);
  std::vector<cplx> cross(n);
  double norm2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    weight[k] = std::norm(proj.initial[k]);
    cross[k] = std::conj(proj.mirror[k]) * proj.initial[k];
    norm2 += weight[k];
  }

  Trajectory tr;
  tr.energy_unit = energy_unit;
  tr.times.assign(times.begin(), times.end());
  const std::size_t count = times.size();
  tr.overlap.resize(count);
  tr.fidelity.resize(count);
  tr.mirror_fidelity.resize(count);
  tr.phase.resize(count);
  tr.norm.assign(count, std::sqrt(norm2));

  const double emax = detail::max_abs_energy(s) / energy_unit;
  for (std::size_t j = 0; j < count; ++j) {
    const double t = times[j] / energy_unit;
    cplx ov{}, mv{};
    for (std::size_t k = 0; k < n; ++k) {
      const cplx ph = std::polar(1.0, -s.energy(k) * t);
      ov += weight[k] * ph;
      mv += cross[k] * ph;
    }
    tr.overlap[j] = ov;
    tr.fidelity[j] = std::norm(ov);
    tr.mirror_fidelity[j] = std::norm(mv);
    const double raw = std::arg(ov);
    if (j == 0) {
      tr.phase[j] = raw;
    } else {
      if ((times[j] - times[j - 1]) * emax >= std::numbers::pi / 4) tr.phase_aliased = true;
      tr.phase[j] = tr.phase[j - 1] + std::remainder(raw - tr.phase[j - 1], 2 * std::numbers::pi);
    }
  }
  return tr;
}

/// Site amplitudes of Psi(t).
inline std::vector<cplx> state_at(const Spectrum& s, const InitialState& init, double t,
                                  double energy_unit = 1.0) {
  const auto proj = detail::project(s, init);
  const std::size_t n = s.size();
  std::vector<cplx> out(n, cplx{});
  for (std::size_t k = 0; k < n; ++k) {
    const cplx c = proj.initial[k] * std::polar(1.0, -s.energy(k) * t / energy_unit);
    for (std::size_t i = 0; i < n; ++i) out[i] += c * s.amplitude(i, k);
  }
  return out;
}

inline std::vector<double> uniform_times(double t_max, int samples) {
  if (samples < 2) throw ConfigError("need at least 2 time samples");
  if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) t[k] = t_max * k / (samples - 1);
  return t;
}

// ---------------------------------------------------------------------------
// Quantum memory

enum class Encoding { Site, Eigenstate };

struct MemoryOptions {
  Encoding encoding = Encoding::Site;
  double horizon = 1000.0;  // 1/strong units
  int samples = 20001;
  std::optional<int> site;  // default: 0 for family a, -m for family b
  std::optional<DisorderConfig> disorder;
  unsigned threads = 0;
};

struct MemoryReport {
  Encoding encoding = Encoding::Site;
  int site = 0;
  double mean_fidelity = 0.0;
  double min_fidelity = 0.0;
  double max_fidelity = 0.0;
  /// Angular frequency (energy units) of the strongest fidelity oscillation
  /// component; 0 when the fidelity is constant.
  double dominant_frequency = 0.0;
  /// Least-squares slope of the unwrapped phase, in energy units.
  double phase_slope = 0.0;
  /// max_t |averaged disordered phase - clean phase|; 0 without disorder.
  double max_phase_deviation = 0.0;

  Trajectory clean;
  /// Realization-averaged fidelity and phase on clean.times (disorder only).
  std::vector<double> avg_fidelity;
  std::vector<double> avg_phase;
  /// E_L(disordered) - E_L(clean) for the localized state, per realization.
  std::vector<double> energy_shifts;
  bool shifts_in_gap = true;
};

inline int default_memory_site(const ChainSpec& spec) {
  return spec.family() == Family::WeakCenter ? 0 : spec.first_site();
}

/// Strongest oscillation frequency of F(t) = |sum_n p_n exp(-i E_n t)|^2,
/// which is a sum of cosines at E_n - E_k with amplitude 2 p_n p_k.
inline double dominant_fidelity_frequency(const Spectrum& s, const InitialState& init) {
  const auto proj = detail::project(s, init);
  const double floor = 1e-9 * std::max(1.0, detail::max_abs_energy(s));
  // Components below this amplitude are rounding noise.
  double best_amp = 1e-12, best_freq = 0.0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      const double gap = std::abs(s.energy(b) - s.energy(a));
      if (gap < floor) continue;
      const double amp = 2.0 * std::norm(proj.initial[a]) * std::norm(proj.initial[b]);
      if (amp > best_amp) {
        best_amp = amp;
        best_freq = gap;
      }
    }
  return best_freq;
}

namespace detail {

inline double lsq_slope(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

inline InitialState memory_initial_state(const Spectrum& s, const ChainSpec& spec, Encoding enc, int site) {
  return enc == Encoding::Site ? InitialState::site(spec, site)
                               : InitialState::eigenstate(s, localized_state(s, spec, site));
}

}  // namespace detail

inline MemoryReport memory_report(const ChainSpec& spec, const MemoryOptions& opt) {
  MemoryReport rep;
  rep.encoding = opt.encoding;
  rep.site = opt.site.value_or(default_memory_site(spec));
  const double unit = spec.strong();
  const auto times = uniform_times(opt.horizon, opt.samples);

  const Spectrum clean = eigendecompose(build_hamiltonian(spec));
  const auto init = detail::memory_initial_state(clean, spec, opt.encoding, rep.site);
  rep.clean = evolve(clean, init, times, unit);
  rep.dominant_frequency = dominant_fidelity_frequency(clean, init);
  const double e_clean = clean.energy(localized_state(clean, spec, rep.site));

  std::vector<double> fidelity = rep.clean.fidelity;
  std::vector<double> phase = rep.clean.phase;

  if (opt.disorder && opt.disorder->e_scale > 0.0) {
    const DisorderConfig cfg = *opt.disorder;
    cfg.validate();
    const int count = cfg.realizations;
    std::vector<Trajectory> runs(static_cast<std::size_t>(count));
    std::vector<double> shifts(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int r = next.fetch_add(1); r < count; r = next.fetch_add(1)) {
        try {
          const auto onsite = draw_onsite(spec, cfg, r);
          const Spectrum s = eigendecompose(build_hamiltonian(spec, std::span<const double>(onsite)));
          runs[r] = evolve(s, detail::memory_initial_state(s, spec, opt.encoding, rep.site), times, unit);
          shifts[r] = s.energy(localized_state(s, spec, rep.site)) - e_clean;
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

    rep.avg_fidelity.assign(times.size(), 0.0);
    rep.avg_phase.assign(times.size(), 0.0);
    for (const auto& tr : runs)
      for (std::size_t j = 0; j < times.size(); ++j) {
        rep.avg_fidelity[j] += tr.fidelity[j];
        rep.avg_phase[j] += tr.phase[j];
      }
    for (std::size_t j = 0; j < times.size(); ++j) {
      rep.avg_fidelity[j] /= count;
      rep.avg_phase[j] /= count;
      rep.max_phase_deviation =
          std::max(rep.max_phase_deviation, std::abs(rep.avg_phase[j] - rep.clean.phase[j]));
    }
    rep.energy_shifts = shifts;
    for (double d : shifts)
      if (std::abs(e_clean + d) >= 0.5 * spec.strong()) rep.shifts_in_gap = false;
    fidelity = rep.avg_fidelity;
    phase = rep.avg_phase;
  }

  double sum = 0.0;
  rep.min_fidelity = std::numeric_limits<double>::infinity();
  rep.max_fidelity = -rep.min_fidelity;
  for (double f : fidelity) {
    sum += f;
    rep.min_fidelity = std::min(rep.min_fidelity, f);
    rep.max_fidelity = std::max(rep.max_fidelity, f);
  }
  rep.mean_fidelity = sum / static_cast<double>(fidelity.size());
  rep.phase_slope = detail::lsq_slope(times, phase) * unit;
  return rep;
}

// ---------------------------------------------------------------------------
// Mirror transfer

/// Energy difference between the strongest end-symmetric and end-antisymmetric
/// in-gap states (weight on the two end sites). Transfer between the ends of
/// such a pair takes pi / splitting. Returns nullopt without both partners.
inline std::optional<double> end_pair_splitting(const Spectrum& s, const ChainSpec& spec) {
  const EnergyWindows windows(spec);
  const std::size_t last = s.size() - 1;
  std::optional<std::size_t> sym, anti;
  double w_sym = 0.0, w_anti = 0.0;
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (windows.classify(s.energy(n)) != BandLabel::InGap) continue;
    const double left = s.amplitude(0, n), right = s.amplitude(last, n);
    const double w = left * left + right * right;
    if (w < 1e-6) continue;
    if (left * right > 0 && w > w_sym) {
      w_sym = w;
      sym = n;
    } else if (left * right < 0 && w > w_anti) {
      w_anti = w;
      anti = n;
    }
  }
  if (!sym || !anti) return std::nullopt;
  return std::abs(s.energy(*sym) - s.energy(*anti));
}

/// pi / end-pair splitting, in 1/strong units.
inline std::optional<double> two_level_mirror_time(const Spectrum& s, const ChainSpec& spec) {
  const auto split = end_pair_splitting(s, spec);
  if (!split || *split <= 0.0) return std::nullopt;
  return std::numbers::pi / *split * spec.strong();
}

struct PstResult {
  bool transfer_detected = false;
  double t_mirror = 0.0;  // 1/strong units
  double fidelity_at_mirror = 0.0;
  double fidelity_revival = 0.0;  // initial-state fidelity at 2 t_mirror
  std::optional<double> two_level_time;
};

struct PstOptions {
  int coarse_samples = 20000;
  double detection_threshold = 0.5;
};

/// Mirror-transfer time from an end site: coarse scan of the mirror fidelity
/// over [0, t_max], a fine scan resolving the fastest oscillation inside the
/// best coarse bracket, then golden-section polishing.
inline PstResult pst_run(const ChainSpec& spec, int inject_site, double t_max, const PstOptions& opt = {}) {
  if (spec.family() != Family::StrongCenter)
    throw ConfigError("mirror transfer needs a family (b) chain with end-localized states");
  if (std::abs(inject_site) != spec.half_length()) throw ConfigError("inject site must be an end site");
  if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");

  const double unit = spec.strong();
  const Spectrum s = eigendecompose(build_hamiltonian(spec));
  const auto init = InitialState::site(spec, inject_site);
  PstResult out;
  out.two_level_time = two_level_mirror_time(s, spec);

  const auto coarse = uniform_times(t_max, opt.coarse_samples + 1);
  const auto tr = evolve(s, init, coarse, unit);
  std::size_t best = 1;
  for (std::size_t j = 1; j < coarse.size(); ++j)
    if (tr.mirror_fidelity[j] > tr.mirror_fidelity[best]) best = j;
  if (tr.mirror_fidelity[best] < opt.detection_threshold) return out;

  auto mirror_at = [&](double t) {
    const double tt[] = {t};
    return evolve(s, init, tt, unit).mirror_fidelity[0];
  };

  // Fine scan: step resolves the fastest phase, capped in size.
  const double lo = coarse[best - 1];
  const double hi = coarse[std::min(best + 1, coarse.size() - 1)];
  const double emax = detail::max_abs_energy(s) / unit;
  double step = (std::numbers::pi / 8) / (2.0 * emax);
  const double span_len = hi - lo;
  constexpr double kMaxFine = 400000.0;
  if (span_len / step > kMaxFine) step = span_len / kMaxFine;
  const int fine_count = static_cast<int>(std::ceil(span_len / step)) + 1;
  std::vector<double> fine(static_cast<std::size_t>(fine_count));
  for (int k = 0; k < fine_count; ++k) fine[k] = std::min(hi, lo + k * step);
  const auto ftr = evolve(s, init, fine, unit);
  std::size_t fbest = 0;
  for (std::size_t j = 1; j < fine.size(); ++j)
    if (ftr.mirror_fidelity[j] > ftr.mirror_fidelity[fbest]) fbest = j;

  // Golden-section maximization around the best fine sample.
  double a = std::max(lo, fine[fbest] - step), b = std::min(hi, fine[fbest] + step);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = mirror_at(c), fd = mirror_at(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, b); ++it) {
    if (fc > fd) {
      b = d, d = c, fd = fc;
      c = b - invphi * (b - a), fc = mirror_at(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + invphi * (b - a), fd = mirror_at(d);
    }
  }
  double t_best = 0.5 * (a + b);
  double f_best = mirror_at(t_best);
  if (ftr.mirror_fidelity[fbest] > f_best) {
    t_best = fine[fbest];
    f_best = ftr.mirror_fidelity[fbest];
  }

  out.transfer_detected = true;
  out.t_mirror = t_best;
  out.fidelity_at_mirror = f_best;
  const double revival[] = {2.0 * t_best};
  out.fidelity_revival = evolve(s, init, revival, unit).fidelity[0];
  return out;
}

struct PstRow {
  double ratio = 0.0;
  double t_max = 0.0;
  PstResult result;
};

/// pst_run for each strong/weak ratio. Without an explicit t_max, each scan
/// covers horizon_factor times the two-level estimate of the mirror time.
inline std::vector<PstRow> pst_scan(const ChainSpec& base, std::span<const double> ratios,
                                    std::optional<double> t_max = std::nullopt,
                                    double horizon_factor = 1.5, const PstOptions& opt = {},
                                    unsigned threads = 0) {
  if (base.family() != Family::StrongCenter)
    throw ConfigError("mirror transfer needs a family (b) chain with end-localized states");
  for (double r : ratios)
    if (!(r >= 2.0)) throw ConfigError("coupling ratio must be >= 2 for mirror transfer scans");
  std::vector<PstRow> rows(ratios.size());
  std::vector<std::exception_ptr> errors(ratios.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < ratios.size(); k = next.fetch_add(1)) {
      try {
        const auto spec = ChainSpec::with_ratio(base.family(), base.n_sites(), base.strong(), ratios[k]);
        double horizon = t_max.value_or(0.0);
        if (!t_max) {
          const auto est = two_level_mirror_time(eigendecompose(build_hamiltonian(spec)), spec);
          if (!est) {
            rows[k] = {ratios[k], 0.0, {}};
            continue;
          }
          horizon = horizon_factor * *est;
        }
        rows[k] = {ratios[k], horizon, pst_run(spec, spec.first_site(), horizon, opt)};
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, ratios.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

}  // namespace sshchain
