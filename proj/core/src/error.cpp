#include "etapt/error.hpp"

namespace etapt {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::BrokenPhase: return "broken-phase";
    case ErrorKind::DegenerateFrequencies: return "degenerate-frequencies";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Degeneracy: return "degeneracy";
    case ErrorKind::TruncationLimit: return "truncation-limit";
    case ErrorKind::IllConditionedNormalization:
      return "ill-conditioned-normalization";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind) {}

BrokenPhaseError::BrokenPhaseError(const std::string& what,
                                   std::array<std::complex<double>, 2> omega_sq)
    : Error(ErrorKind::BrokenPhase, what), omega_sq_(omega_sq) {}

}  // namespace etapt
