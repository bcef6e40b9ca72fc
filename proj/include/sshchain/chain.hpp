#pragma once

// Symmetric dimerized chains in the single-excitation sector.
//
// Sites carry the symmetric labels i = -m..m (m = (N-1)/2). Arrays are
// 0-based with index = i + m. Couplings are stored as the tridiagonal pair
// (onsite energies, nearest-neighbour couplings); a dense matrix is never
// built here.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sshchain/error.hpp"

namespace sshchain {

/// Chain families, distinguished by how the middle site couples.
enum class Family {
  WeakCenter,    ///< case (a): J(-1,0) = J(0,1) = weak
  StrongCenter,  ///< case (b): J(-1,0) = J(0,1) = strong
};

inline std::string_view family_code(Family f) {
  return f == Family::WeakCenter ? "a" : "b";
}

inline Family parse_family(std::string_view code) {
  if (code == "a" || code == "A") return Family::WeakCenter;
  if (code == "b" || code == "B") return Family::StrongCenter;
  throw ConfigError("family must be 'a' or 'b', got '" + std::string(code) + "'");
}

class ChainSpec {
 public:
  ChainSpec(Family family, int n_sites, double strong, double weak)
      : family_(family), n_sites_(n_sites), strong_(strong), weak_(weak) {
    if (n_sites < 5 || n_sites % 2 == 0)
      throw ConfigError("n_sites must be odd and >= 5, got " + std::to_string(n_sites));
    if (!(strong > 0.0) || !(weak > 0.0) || !std::isfinite(strong) || !std::isfinite(weak))
      throw ConfigError("couplings must be positive and finite");
    if (!(weak < strong))
      throw ConfigError("weak coupling must be strictly smaller than strong coupling");
  }

  /// Weak coupling set from the ratio strong/weak.
  static ChainSpec with_ratio(Family family, int n_sites, double strong, double ratio) {
    if (!(ratio > 0.0)) throw ConfigError("coupling ratio must be positive");
    return ChainSpec(family, n_sites, strong, strong / ratio);
  }

  Family family() const noexcept { return family_; }
  int n_sites() const noexcept { return n_sites_; }
  int half_length() const noexcept { return (n_sites_ - 1) / 2; }
  double strong() const noexcept { return strong_; }
  double weak() const noexcept { return weak_; }
  double ratio() const noexcept { return strong_ / weak_; }

  int first_site() const noexcept { return -half_length(); }
  int last_site() const noexcept { return half_length(); }
  bool contains_site(int site) const noexcept {
    return site >= first_site() && site <= last_site();
  }
  int index_of(int site) const {
    if (!contains_site(site))
      throw ConfigError("site " + std::to_string(site) + " outside chain");
    return site + half_length();
  }
  int site_of(int index) const noexcept { return index - half_length(); }

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;

 private:
  Family family_;
  int n_sites_;
  double strong_;
  double weak_;
};

/// Nearest-neighbour couplings; entry k holds J(i, i+1) for i = k - m.
struct CouplingVector {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
  friend bool operator==(const CouplingVector&, const CouplingVector&) = default;
};

namespace detail {

// Even sites on the right half (i >= 0) start a bond of type `right_even`,
// even sites on the left half start a bond of the other type.
inline double bond_value(const ChainSpec& spec, int site) {
  const bool even = site % 2 == 0;
  const bool weak_center = spec.family() == Family::WeakCenter;
  bool strong_bond;
  if (site >= 0)
    strong_bond = weak_center ? !even : even;
  else
    strong_bond = weak_center ? even : !even;
  return strong_bond ? spec.strong() : spec.weak();
}

}  // namespace detail

inline CouplingVector build_couplings(const ChainSpec& spec) {
  CouplingVector out;
  out.values.reserve(static_cast<std::size_t>(spec.n_sites() - 1));
  for (int site = spec.first_site(); site < spec.last_site(); ++site)
    out.values.push_back(detail::bond_value(spec, site));
  return out;
}

/// Real symmetric tridiagonal Hamiltonian in the one-excitation basis.
class Hamiltonian {
 public:
  Hamiltonian(std::vector<double> diag, std::vector<double> offdiag)
      : diag_(std::move(diag)), offdiag_{std::move(offdiag)} {
    if (diag_.empty()) throw ConfigError("Hamiltonian needs at least one site");
    if (offdiag_.size() + 1 != diag_.size())
      throw ConfigError("off-diagonal length must be N-1");
  }
  Hamiltonian(std::vector<double> diag, CouplingVector couplings)
      : Hamiltonian(std::move(diag), std::move(couplings.values)) {}

  std::size_t size() const noexcept { return diag_.size(); }
  std::span<const double> diag() const noexcept { return diag_; }
  std::span<const double> offdiag() const noexcept { return offdiag_.values; }
  const CouplingVector& couplings() const noexcept { return offdiag_; }

  /// Largest absolute matrix element.
  double max_abs_element() const noexcept {
    double v = 0.0;
    for (double d : diag_) v = std::max(v, std::abs(d));
    for (double j : offdiag_.values) v = std::max(v, std::abs(j));
    return v;
  }

  friend bool operator==(const Hamiltonian&, const Hamiltonian&) = default;

 private:
  std::vector<double> diag_;
  CouplingVector offdiag_;
};

inline Hamiltonian build_hamiltonian(const ChainSpec& spec,
                                     std::optional<std::span<const double>> onsite = std::nullopt) {
  const auto n = static_cast<std::size_t>(spec.n_sites());
  std::vector<double> diag(n, 0.0);
  if (onsite) {
    if (onsite->size() != n)
      throw ConfigError("onsite energies: expected " + std::to_string(n) + " values, got " +
                        std::to_string(onsite->size()));
    diag.assign(onsite->begin(), onsite->end());
  }
  return Hamiltonian(std::move(diag), build_couplings(spec));
}

/// Reflection about the middle site: amplitude at site i moves to site -i.
template <typename T>
std::vector<T> mirror_reflect(std::span<const T> state) {
  return std::vector<T>(state.rbegin(), state.rend());
}

template <typename T>
std::vector<T> mirror_reflect(const std::vector<T>& state) {
  return mirror_reflect(std::span<const T>(state));
}

/// M H M for a tridiagonal Hamiltonian.
inline Hamiltonian mirror_reflect(const Hamiltonian& h) {
  auto d = h.diag();
  auto j = h.offdiag();
  return Hamiltonian(std::vector<double>(d.rbegin(), d.rend()),
                     std::vector<double>(j.rbegin(), j.rend()));
}

}  // namespace sshchain
