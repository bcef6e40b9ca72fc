#pragma once

#include <stdexcept>
#include <string>

namespace sshchain {

/// Invalid parameters or malformed input (maps to CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Eigensolver failure; carries enough context to locate the failing input.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int eigen_index, int iterations)
      : std::runtime_error(what), eigen_index_(eigen_index), iterations_(iterations) {}

  int eigen_index() const noexcept { return eigen_index_; }
  int iterations() const noexcept { return iterations_; }

 private:
  int eigen_index_;
  int iterations_;
};

/// Results contradict the structure the chain family guarantees
/// (state counts, normalization). Indicates a construction or solver bug.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sshchain
