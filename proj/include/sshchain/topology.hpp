#pragma once

// Bulk invariants of a two-site unit cell with Bloch Hamiltonian
//   H(k) = [[0, q(k)], [conj(q(k)), 0]],  q(k) = intra + inter * exp(-i k),
// and a real-space census of the domain walls in a chain's coupling pattern.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "sshchain/chain.hpp"
#include "sshchain/error.hpp"

namespace sshchain {

inline constexpr int kDefaultKPoints = 1024;

/// Raised when intra and inter couplings have equal magnitude: the gap closes
/// and no winding/Zak phase is defined.
class GaplessError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

enum class DimerConfig { A, B };

struct UnitCell {
  double intra;
  double inter;
  DimerConfig label;

  /// Strong bond inside the cell.
  static UnitCell a(double strong, double weak) { return {strong, weak, DimerConfig::A}; }
  /// Strong bond between cells.
  static UnitCell b(double strong, double weak) { return {weak, strong, DimerConfig::B}; }
};

struct BlochSample {
  double k;
  std::complex<double> offdiag;  // q(k)
  double lower_energy;           // -|q|
  double upper_energy;           // +|q|
  // Pseudospin polarization of the upper-band state.
  double sx;
  double sy;
  double sz;
};

inline BlochSample bloch_sample(const UnitCell& cell, double k) {
  const std::complex<double> q = cell.intra + cell.inter * std::polar(1.0, -k);
  const double mag = std::abs(q);
  const double theta = std::arg(q);
  // Upper state (1, exp(-i theta)) / sqrt(2).
  return {k, q, -mag, mag, std::cos(theta), -std::sin(theta), 0.0};
}

namespace detail {

inline void require_gapped(const UnitCell& cell, int k_points, int min_points) {
  if (k_points < min_points)
    throw ConfigError("need at least " + std::to_string(min_points) + " k-points");
  const double a = std::abs(cell.intra), b = std::abs(cell.inter);
  if (std::abs(a - b) <= 1e-12 * std::max(a, b))
    throw GaplessError("gapless cell (|intra| = |inter|): winding undefined");
}

inline double k_at(int j, int k_points) {
  return -std::numbers::pi + 2.0 * std::numbers::pi * j / k_points;
}

}  // namespace detail

/// Samples across the Brillouin zone [-pi, pi), for plotting the path.
inline std::vector<BlochSample> pseudospin_path(const UnitCell& cell, int k_points = kDefaultKPoints) {
  std::vector<BlochSample> out;
  out.reserve(static_cast<std::size_t>(k_points));
  for (int j = 0; j < k_points; ++j) out.push_back(bloch_sample(cell, detail::k_at(j, k_points)));
  return out;
}

/// Turns of the (sx, sy) polarization around the origin over one traversal
/// of the zone: 0 for configuration A, 1 for B.
inline int winding_number(const UnitCell& cell, int k_points = kDefaultKPoints) {
  detail::require_gapped(cell, k_points, 16);
  double total = 0.0;
  auto angle = [&](int j) {
    const auto s = bloch_sample(cell, detail::k_at(j % k_points, k_points));
    return std::atan2(s.sy, s.sx);
  };
  double prev = angle(0);
  for (int j = 1; j <= k_points; ++j) {
    const double cur = angle(j);
    total += std::remainder(cur - prev, 2.0 * std::numbers::pi);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

/// Lower-band Zak phase in [0, 2 pi) from the discretized Wilson loop
/// -arg prod_j <u(k_j)|u(k_{j+1})> with the cell-periodic gauge
/// u(k) = (1, -exp(-i arg q)) / sqrt(2). Only differences between
/// configurations are meaningful.
inline double zak_phase(const UnitCell& cell, int k_points = kDefaultKPoints) {
  detail::require_gapped(cell, k_points, 16);
  auto lower = [&](int j) {
    const auto s = bloch_sample(cell, detail::k_at(j % k_points, k_points));
    const double inv = 1.0 / std::sqrt(2.0);
    return std::array<std::complex<double>, 2>{inv, -inv * std::polar(1.0, -std::arg(s.offdiag))};
  };
  std::complex<double> loop = 1.0;
  auto prev = lower(0);
  for (int j = 1; j <= k_points; ++j) {
    const auto cur = lower(j);
    const auto overlap = std::conj(prev[0]) * cur[0] + std::conj(prev[1]) * cur[1];
    loop *= overlap / std::abs(overlap);
    prev = cur;
  }
  double gamma = -std::arg(loop);
  gamma = std::fmod(gamma, 2.0 * std::numbers::pi);
  if (gamma < 0) gamma += 2.0 * std::numbers::pi;
  return gamma;
}

/// Difference of two phases folded into [0, 2 pi).
inline double phase_difference(double a, double b) {
  double d = std::fmod(a - b, 2.0 * std::numbers::pi);
  if (d < 0) d += 2.0 * std::numbers::pi;
  return d;
}

// ---------------------------------------------------------------------------
// Real-space census

enum class DefectKind {
  Soliton,  ///< weak-weak junction: one zero mode on the junction site
  Trimer,   ///< strong-strong junction: one zero mode plus two outer states
  End,      ///< weakly terminated end: one zero mode on the end site
};

inline std::string_view to_string(DefectKind k) {
  switch (k) {
    case DefectKind::Soliton: return "soliton";
    case DefectKind::Trimer: return "trimer";
    default: return "end";
  }
}

struct Defect {
  DefectKind kind;
  int site;  // symmetric label of the junction (or end) site
};

struct Census {
  std::vector<Defect> defects;
  int zero_states = 0;
  int outer_states = 0;
};

/// Locates every break in the strong/weak alternation. Each weak-weak
/// junction or weak chain end binds one zero mode; each strong-strong junction
/// forms a trimer with one zero mode and two states beyond the bands.
inline Census interface_census(const ChainSpec& spec) {
  const auto j = build_couplings(spec).values;
  const int n = spec.n_sites();
  const double weak = spec.weak(), strong = spec.strong();
  Census c;
  if (j.front() == weak) c.defects.push_back({DefectKind::End, spec.first_site()});
  for (int idx = 1; idx + 1 < n; ++idx) {
    const double left = j[idx - 1], right = j[idx];
    if (left == weak && right == weak) c.defects.push_back({DefectKind::Soliton, spec.site_of(idx)});
    if (left == strong && right == strong) c.defects.push_back({DefectKind::Trimer, spec.site_of(idx)});
  }
  if (j.back() == weak) c.defects.push_back({DefectKind::End, spec.last_site()});
  for (const auto& d : c.defects) {
    c.zero_states += 1;
    if (d.kind == DefectKind::Trimer) c.outer_states += 2;
  }
  return c;
}

}  // namespace sshchain
