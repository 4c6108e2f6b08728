#pragma once

#include <stdexcept>
#include <string>

namespace ninls {

// Raised for invalid parameters, grids or configuration values.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class NumericalFailure { picard_divergence, nan_detected, quadrature_not_converged };

const char* to_string(NumericalFailure kind);

class NumericalError : public std::runtime_error {
 public:
  NumericalError(NumericalFailure kind, const std::string& what);
  NumericalFailure kind() const noexcept { return kind_; }

 private:
  NumericalFailure kind_;
};

}  // namespace ninls
