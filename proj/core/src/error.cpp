#include "ninls/error.hpp"

namespace ninls {

const char* to_string(NumericalFailure kind) {
  switch (kind) {
    case NumericalFailure::picard_divergence:
      return "picard_divergence";
    case NumericalFailure::nan_detected:
      return "nan_detected";
    case NumericalFailure::quadrature_not_converged:
      return "quadrature_not_converged";
  }
  return "unknown";
}

NumericalError::NumericalError(NumericalFailure kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace ninls
