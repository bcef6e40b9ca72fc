#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sshchain/chain.hpp"

namespace sshchain::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kSolverError = 3, kIoError = 4 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Spectrum, Eigenstates, Disorder, Evolve, Memory, Pst, Classify };

std::string_view command_name(Command c);
Command parse_command(std::string_view name);

/// Fully resolved parameters of one run. Times are in 1/strong units.
struct RunConfig {
  Command command = Command::Spectrum;
  Family family = Family::WeakCenter;
  int sites = 101;
  double strong = 8.0;
  double weak = 0.2;
  std::vector<double> ratios;  // when set, weak = strong / ratios[0]; pst scans them all
  std::vector<double> disorder{0.0};
  int realizations = 100;
  std::uint64_t seed = 1;
  std::optional<double> tmax;
  std::optional<int> samples;
  std::optional<std::string> inject;  // site label or "gapstate"
  std::vector<int> states;            // eigenstates: 1-based indices
  std::filesystem::path out = "out";
  std::string format = "csv";
  unsigned threads = 0;

  ChainSpec chain() const {
    return ChainSpec(family, sites, strong, ratios.empty() ? weak : strong / ratios.front());
  }
  /// Manifest form; feeding it back through apply_json reproduces the run.
  nlohmann::ordered_json to_json() const;
  void validate() const;
};

/// Overlays keys present in `j` (flag names, or a manifest with a "config"
/// object) onto `cfg`.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

/// Runs that regenerate one figure's data, written below base.out.
std::vector<RunConfig> figure_preset(int figure, const RunConfig& base);

/// Executes one run, writing artifacts and manifest.json into cfg.out.
/// Returns the artifact file names in write order.
std::vector<std::string> run(const RunConfig& cfg);

/// Full command-line entry point; returns the process exit code. Errors are
/// reported as one JSON line on `err`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

}  // namespace sshchain::cli
