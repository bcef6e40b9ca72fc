#pragma once

// Tabular artifacts (CSV with a JSON mirror) and ChainSpec JSON.
//
// Numbers are written with std::to_chars: shortest round-trip form, '.'
// decimal separator, independent of the global locale.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sshchain/chain.hpp"
#include "sshchain/disorder.hpp"
#include "sshchain/dynamics.hpp"
#include "sshchain/spectral.hpp"
#include "sshchain/topology.hpp"

namespace sshchain {

inline std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw ConfigError("table row width mismatch");
    rows.push_back(std::move(row));
  }
};

inline std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_cell(row[k]);
    os << '\n';
  }
}

/// Array of row objects; non-finite numbers become null.
inline nlohmann::ordered_json to_json(const Table& t) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < row.size(); ++k) {
      const auto& c = row[k];
      if (const auto* i = std::get_if<std::int64_t>(&c))
        obj[t.columns[k]] = *i;
      else if (const auto* d = std::get_if<double>(&c))
        obj[t.columns[k]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json();
      else
        obj[t.columns[k]] = std::get<std::string>(c);
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

// ---------------------------------------------------------------------------
// Artifact tables

/// spectrum.csv; n is 1-based.
inline Table spectrum_table(const Spectrum& s, const ChainSpec& spec) {
  Table t{{"n", "energy", "parity", "ipr", "peak_site", "peak_amp", "band_label"}, {}};
  const auto meta = describe(s, spec);
  for (std::size_t n = 0; n < s.size(); ++n) {
    const auto& m = meta[n];
    t.add({static_cast<std::int64_t>(n + 1), s.energy(n), std::string(to_string(m.parity)), m.ipr,
           static_cast<std::int64_t>(m.peak_site), m.peak_amp, std::string(to_string(m.band))});
  }
  return t;
}

/// eigenstate.csv for state n (0-based index).
inline Table eigenstate_table(const Spectrum& s, const ChainSpec& spec, std::size_t n) {
  Table t{{"site", "amplitude"}, {}};
  for (std::size_t i = 0; i < s.size(); ++i)
    t.add({static_cast<std::int64_t>(spec.site_of(static_cast<int>(i))), s.amplitude(i, n)});
  return t;
}

inline Table disorder_table(std::span<const DisorderResult> results, const ChainSpec& spec) {
  Table t{{"site", "e_scale", "rho_bar"}, {}};
  for (const auto& r : results)
    for (std::size_t i = 0; i < r.rho_bar.size(); ++i)
      t.add({static_cast<std::int64_t>(spec.site_of(static_cast<int>(i))), r.e_scale, r.rho_bar[i]});
  return t;
}

inline Table avg_spectrum_table(std::span<const DisorderResult> results) {
  Table t{{"n", "e_scale", "mean_energy", "std_energy"}, {}};
  for (const auto& r : results)
    for (std::size_t n = 0; n < r.avg_energies.size(); ++n)
      t.add({static_cast<std::int64_t>(n + 1), r.e_scale, r.avg_energies[n], r.std_energies[n]});
  return t;
}

inline Table trajectory_table(const Trajectory& tr) {
  Table t{{"t", "re_overlap", "im_overlap", "fidelity", "mirror_fidelity", "phase"}, {}};
  for (std::size_t j = 0; j < tr.times.size(); ++j)
    t.add({tr.times[j], tr.overlap[j].real(), tr.overlap[j].imag(), tr.fidelity[j],
           tr.mirror_fidelity[j], tr.phase[j]});
  return t;
}

/// Undetected transfers are written as nan.
inline Table pst_scan_table(std::span<const PstRow> rows) {
  Table t{{"ratio", "t_mirror", "fidelity_at_mirror", "fidelity_revival"}, {}};
  const double nan = std::nan("");
  for (const auto& r : rows) {
    const bool ok = r.result.transfer_detected;
    t.add({r.ratio, ok ? r.result.t_mirror : nan, ok ? r.result.fidelity_at_mirror : nan,
           ok ? r.result.fidelity_revival : nan});
  }
  return t;
}

inline Table pseudospin_path_table(std::span<const UnitCell> cells, int k_points) {
  Table t{{"config", "k", "sx", "sy"}, {}};
  for (const auto& cell : cells)
    for (const auto& s : pseudospin_path(cell, k_points))
      t.add({std::string(cell.label == DimerConfig::A ? "A" : "B"), s.k, s.sx, s.sy});
  return t;
}

}  // namespace sshchain

// ChainSpec <-> {"family":"a","n_sites":101,"strong":8.0,"weak":0.2}
namespace nlohmann {
template <>
struct adl_serializer<sshchain::ChainSpec> {
  template <typename Json>
  static sshchain::ChainSpec from_json(const Json& j) {
    try {
      return sshchain::ChainSpec(sshchain::parse_family(j.at("family").template get<std::string>()),
                                 j.at("n_sites").template get<int>(), j.at("strong").template get<double>(),
                                 j.at("weak").template get<double>());
    } catch (const nlohmann::json::exception& e) {
      throw sshchain::ConfigError(std::string("invalid ChainSpec JSON: ") + e.what());
    }
  }
  template <typename Json>
  static void to_json(Json& j, const sshchain::ChainSpec& s) {
    j = Json{{"family", std::string(sshchain::family_code(s.family()))},
             {"n_sites", s.n_sites()},
             {"strong", s.strong()},
             {"weak", s.weak()}};
  }
};
}  // namespace nlohmann
