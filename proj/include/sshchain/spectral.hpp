#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sshchain/chain.hpp"
#include "sshchain/error.hpp"
#include "sshchain/tridiagonal_eigen.hpp"

namespace sshchain {

inline constexpr double kDefaultResidualTol = 1e-10;

/// Verified eigenpairs of a Hamiltonian, energies ascending.
///
/// Column n of states() is the eigenvector paired with energies()[n]. Each
/// column is normalized with its largest-magnitude entry positive (first such
/// entry on ties), so output is reproducible across runs.
class Spectrum {
 public:
  Spectrum(std::vector<double> energies, Eigen::MatrixXd states, double residual_tol)
      : energies_(std::move(energies)), states_(std::move(states)), residual_tol_(residual_tol) {
    if (static_cast<Eigen::Index>(energies_.size()) != states_.cols() ||
        states_.rows() != states_.cols())
      throw ConfigError("Spectrum: energies/states shape mismatch");
  }

  std::size_t size() const noexcept { return energies_.size(); }
  std::span<const double> energies() const noexcept { return energies_; }
  double energy(std::size_t n) const { return energies_.at(n); }
  const Eigen::MatrixXd& states() const noexcept { return states_; }
  auto state(std::size_t n) const { return states_.col(static_cast<Eigen::Index>(n)); }
  /// c_{i,n} with i given as an array index (0-based).
  double amplitude(std::size_t index, std::size_t n) const {
    return states_(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(n));
  }
  double residual_tol() const noexcept { return residual_tol_; }

 private:
  std::vector<double> energies_;
  Eigen::MatrixXd states_;
  double residual_tol_;
};

namespace detail {

inline Eigen::VectorXd apply(const Hamiltonian& h, const Eigen::VectorXd& v) {
  const auto d = h.diag();
  const auto j = h.offdiag();
  const Eigen::Index n = v.size();
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = d[i] * v[i];
    if (i > 0) acc += j[i - 1] * v[i - 1];
    if (i + 1 < n) acc += j[i] * v[i + 1];
    out[i] = acc;
  }
  return out;
}

inline void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= peak * (1.0 - 1e-10)) {
      if (v[i] < 0) v = -v;
      return;
    }
  }
}

}  // namespace detail

/// Diagonalizes `h` and verifies every pair before returning it.
///
/// Throws SolverError on non-convergence or when a residual
/// |H phi - E phi|_2 exceeds residual_tol * max(1, |H|_max), or the basis is
/// not orthonormal to 1e-10.
inline Spectrum eigendecompose(const Hamiltonian& h, double residual_tol = kDefaultResidualTol) {
  auto result = tridiagonal_eigen<double>(h.diag(), h.offdiag());
  const Eigen::Index n = static_cast<Eigen::Index>(h.size());
  for (Eigen::Index k = 0; k < n; ++k) {
    result.vectors.col(k).normalize();
    detail::fix_sign(result.vectors.col(k));
  }

  const double bound = residual_tol * std::max(1.0, h.max_abs_element());
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::VectorXd v = result.vectors.col(k);
    const double res = (detail::apply(h, v) - result.values[k] * v).norm();
    if (!(res <= bound))
      throw SolverError("eigenpair " + std::to_string(k) + " residual " + std::to_string(res) +
                            " exceeds bound " + std::to_string(bound),
                        static_cast<int>(k), result.max_iterations_used);
  }
  const double ortho =
      (result.vectors.transpose() * result.vectors - Eigen::MatrixXd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  if (!(ortho < 1e-10))
    throw SolverError("eigenvectors not orthonormal (max deviation " + std::to_string(ortho) + ")",
                      -1, result.max_iterations_used);

  return Spectrum(std::move(result.values), std::move(result.vectors), residual_tol);
}

// ---------------------------------------------------------------------------
// Per-state metadata

enum class Parity { Even, Odd, Undefined };
enum class BandLabel { LowerBand, UpperBand, InGap, OuterLocalized, Unclassified };

inline std::string_view to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "+1";
    case Parity::Odd: return "-1";
    default: return "undefined";
  }
}

inline std::string_view to_string(BandLabel b) {
  switch (b) {
    case BandLabel::LowerBand: return "lower";
    case BandLabel::UpperBand: return "upper";
    case BandLabel::InGap: return "in_gap";
    case BandLabel::OuterLocalized: return "outer";
    default: return "unclassified";
  }
}

/// Energy windows used to label states: bands within 2*weak of -/+strong,
/// in-gap below strong/2, outer beyond strong + 2*weak.
struct EnergyWindows {
  double strong;
  double weak;

  explicit EnergyWindows(const ChainSpec& spec) : strong(spec.strong()), weak(spec.weak()) {}

  BandLabel classify(double e) const noexcept {
    const double a = std::abs(e);
    if (a < 0.5 * strong) return BandLabel::InGap;
    if (a > strong + 2.0 * weak) return BandLabel::OuterLocalized;
    if (a >= strong - 2.0 * weak) return e < 0 ? BandLabel::LowerBand : BandLabel::UpperBand;
    return BandLabel::Unclassified;
  }
};

struct StateMetadata {
  Parity parity = Parity::Undefined;
  double ipr = 0.0;
  int peak_site = 0;  // symmetric site label
  double peak_amp = 0.0;
  BandLabel band = BandLabel::Unclassified;
};

/// <phi_n| M |phi_n>, the mirror expectation value.
inline double mirror_expectation(const Spectrum& s, std::size_t n) {
  const auto v = s.state(n);
  return v.dot(v.reverse());
}

inline std::vector<StateMetadata> describe(const Spectrum& s, const ChainSpec& spec) {
  if (s.size() != static_cast<std::size_t>(spec.n_sites()))
    throw ConfigError("describe: spectrum size does not match chain");
  const EnergyWindows windows(spec);
  std::vector<StateMetadata> out(s.size());
  for (std::size_t n = 0; n < s.size(); ++n) {
    const auto v = s.state(n);
    auto& md = out[n];
    const double m = mirror_expectation(s, n);
    if (m >= 1.0 - 1e-8)
      md.parity = Parity::Even;
    else if (m <= -1.0 + 1e-8)
      md.parity = Parity::Odd;
    md.ipr = v.array().pow(4).sum();
    Eigen::Index peak = 0;
    md.peak_amp = v.cwiseAbs().maxCoeff(&peak);
    md.peak_site = spec.site_of(static_cast<int>(peak));
    md.band = windows.classify(s.energy(n));
  }
  return out;
}

/// Mirror parities of the symmetrized/antisymmetrized combinations spanning
/// the near-degenerate cluster (|E - E_n| < split_tol) containing state n.
/// Ascending (odd first).
inline std::vector<Parity> cluster_parities(const Spectrum& s, std::size_t n, double split_tol) {
  std::vector<Eigen::Index> members;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (std::abs(s.energy(k) - s.energy(n)) < split_tol) members.push_back(static_cast<Eigen::Index>(k));
  const auto dim = static_cast<Eigen::Index>(members.size());
  Eigen::MatrixXd block(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b)
      block(a, b) = s.states().col(members[a]).dot(s.states().col(members[b]).reverse());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block, Eigen::EigenvaluesOnly);
  std::vector<Parity> out;
  for (Eigen::Index a = 0; a < dim; ++a) {
    const double p = solver.eigenvalues()[a];
    out.push_back(p > 1.0 - 1e-8 ? Parity::Even : p < -1.0 + 1e-8 ? Parity::Odd : Parity::Undefined);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gap states

struct LocalizedCounts {
  int in_gap = 0;
  int outer = 0;
  int per_band = 0;
  friend bool operator==(const LocalizedCounts&, const LocalizedCounts&) = default;
};

/// Counts implied by the family and the parity of m = (N-1)/2. For odd m the
/// chain ends flip from strong to weak termination (and vice versa).
inline LocalizedCounts expected_counts(const ChainSpec& spec) {
  const int m = spec.half_length();
  LocalizedCounts c;
  if (spec.family() == Family::WeakCenter) {
    c.in_gap = (m % 2 == 0) ? 1 : 3;
  } else {
    c.in_gap = (m % 2 == 0) ? 3 : 1;
    c.outer = 2;
  }
  c.per_band = (spec.n_sites() - c.in_gap - c.outer) / 2;
  return c;
}

struct LabeledState {
  std::size_t n;
  BandLabel band;
};

struct GapStates {
  std::vector<LabeledState> labels;  // every state, in energy order
  std::vector<std::size_t> in_gap;
  std::vector<std::size_t> outer;
  std::vector<std::size_t> lower;
  std::vector<std::size_t> upper;

  LocalizedCounts counts() const {
    return {static_cast<int>(in_gap.size()), static_cast<int>(outer.size()),
            lower.size() == upper.size() ? static_cast<int>(lower.size()) : -1};
  }
};

/// Labels every state by energy window. With `check_counts`, throws
/// StructuralError unless the counts equal expected_counts(spec).
inline GapStates locate_gap_states(const Spectrum& s, const ChainSpec& spec, bool check_counts = true) {
  if (s.size() != static_cast<std::size_t>(spec.n_sites()))
    throw ConfigError("locate_gap_states: spectrum size does not match chain");
  const EnergyWindows windows(spec);
  GapStates out;
  int unclassified = 0;
  for (std::size_t n = 0; n < s.size(); ++n) {
    const BandLabel b = windows.classify(s.energy(n));
    out.labels.push_back({n, b});
    switch (b) {
      case BandLabel::InGap: out.in_gap.push_back(n); break;
      case BandLabel::OuterLocalized: out.outer.push_back(n); break;
      case BandLabel::LowerBand: out.lower.push_back(n); break;
      case BandLabel::UpperBand: out.upper.push_back(n); break;
      default: ++unclassified;
    }
  }
  if (check_counts) {
    const auto want = expected_counts(spec);
    const auto got = out.counts();
    if (unclassified != 0 || !(got == want))
      throw StructuralError("family " + std::string(family_code(spec.family())) + ", N=" +
                            std::to_string(spec.n_sites()) + ": expected " +
                            std::to_string(want.in_gap) + " in-gap/" + std::to_string(want.outer) +
                            " outer/" + std::to_string(want.per_band) + " per band, found " +
                            std::to_string(got.in_gap) + "/" + std::to_string(got.outer) + "/" +
                            std::to_string(got.per_band) + " (" + std::to_string(unclassified) +
                            " unclassified)");
  }
  return out;
}

/// Sum of |phi_n><phi_n| over states with |E_n| < e_window.
inline Eigen::MatrixXd zero_subspace_projector(const Spectrum& s, double e_window) {
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < s.size(); ++k)
    if (std::abs(s.energy(k)) < e_window) p.noalias() += s.state(k) * s.state(k).transpose();
  return p;
}

// ---------------------------------------------------------------------------
// Bands

struct BandProfile {
  std::vector<double> lower;  // ascending
  std::vector<double> upper;  // ascending
};

inline BandProfile band_profile(const Spectrum& s, const ChainSpec& spec) {
  const auto states = locate_gap_states(s, spec, false);
  BandProfile out;
  for (auto n : states.lower) out.lower.push_back(s.energy(n));
  for (auto n : states.upper) out.upper.push_back(s.energy(n));
  return out;
}

/// Largest gap within consecutive level pairs (0,1), (2,3), ... of a band.
/// Returns +inf for an odd-sized band, where levels cannot pair up.
inline double max_pair_splitting(std::span<const double> band) {
  if (band.size() % 2 != 0) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < band.size(); k += 2) worst = std::max(worst, band[k + 1] - band[k]);
  return worst;
}

/// Leading-order upper band: each half-chain of L dimers acts as a uniform
/// chain with hopping weak/2 around +strong, so levels are
/// strong + weak*cos(k*pi/(L+1)), k = 1..L, each doubly degenerate.
/// Ascending. Lower band is the negation.
inline std::vector<double> dimer_chain_band(const ChainSpec& spec) {
  const int per_band = expected_counts(spec).per_band;
  const int dimers = per_band / 2;
  std::vector<double> out;
  for (int k = dimers; k >= 1; --k) {
    const double e = spec.strong() + spec.weak() * std::cos(k * std::numbers::pi / (dimers + 1));
    out.push_back(e);
    out.push_back(e);
  }
  return out;
}

}  // namespace sshchain
