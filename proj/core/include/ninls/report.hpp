#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ninls {

using ParamValue = std::variant<bool, std::int64_t, double, std::string>;

struct Measurement {
  std::string input;
  double ratio = 0.0;
};

struct ProbeReport {
  std::string probe_name;
  std::map<std::string, ParamValue> params;
  std::vector<std::uint64_t> seeds;
  std::vector<Measurement> measured;
  double max_ratio = 0.0;
  std::optional<double> fitted_exponent;
  bool tolerance_met = false;

  // Appends and keeps max_ratio in sync.
  void add(std::string input, double ratio);
  void set(const std::string& key, ParamValue v) { params[key] = std::move(v); }

  // {probe_name, params, seeds, measured[], max_ratio, fitted_exponent, tolerance_met}
  std::string to_json() const;
  // Two columns: input, ratio.
  std::string measured_csv() const;
};

// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Quotes a CSV cell when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

// Shortest round-trip decimal for CSV cells.
std::string format_double(double v);

// Recorded in every report so coefficients can be interpreted.
inline constexpr const char* kTransformNormalization =
    "forward 1/(nx*ny), inverse 1; line directions are periodized boxes of length L";
inline constexpr const char* kGeneratorName = "mt19937_64";

}  // namespace ninls
