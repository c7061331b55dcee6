// error.hpp: exception type shared by every etapt module.

#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace etapt {

enum class ErrorKind {
  InvalidDimension,
  DimensionMismatch,
  InvalidArgument,
  BrokenPhase,
  DegenerateFrequencies,
  Numerical,
  Degeneracy,
  TruncationLimit,
  IllConditionedNormalization,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when the coupling puts the oscillator past the exceptional point.
// Carries the complex squared normal-mode frequencies for diagnostics.
class BrokenPhaseError : public Error {
 public:
  BrokenPhaseError(const std::string& what,
                   std::array<std::complex<double>, 2> omega_sq);

  const std::array<std::complex<double>, 2>& omega_sq() const noexcept {
    return omega_sq_;
  }

 private:
  std::array<std::complex<double>, 2> omega_sq_;
};

}  // namespace etapt
