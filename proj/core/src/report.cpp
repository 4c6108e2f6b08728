#include "ninls/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ninls/error.hpp"

namespace ninls {

void ProbeReport::add(std::string input, double ratio) {
  if (measured.empty() || ratio > max_ratio) max_ratio = ratio;
  measured.push_back({std::move(input), ratio});
}

std::string ProbeReport::to_json() const {
  nlohmann::ordered_json j;
  j["probe_name"] = probe_name;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) {
    std::visit([&](const auto& x) { p[k] = x; }, v);
  }
  j["params"] = p;
  j["seeds"] = seeds;
  nlohmann::ordered_json m = nlohmann::ordered_json::array();
  for (const auto& e : measured) m.push_back({{"input", e.input}, {"ratio", e.ratio}});
  j["measured"] = m;
  j["max_ratio"] = max_ratio;
  if (fitted_exponent) {
    j["fitted_exponent"] = *fitted_exponent;
  } else {
    j["fitted_exponent"] = nullptr;
  }
  j["tolerance_met"] = tolerance_met;
  return j.dump(2) + "\n";
}

std::string ProbeReport::measured_csv() const {
  std::string out = "input,ratio\n";
  for (const auto& e : measured) out += csv_field(e.input) + "," + format_double(e.ratio) + "\n";
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("slope fit needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0) || !(y[k] > 0)) throw ConfigError("slope fit needs positive data");
    const double a = std::log(x[k]), b = std::log(y[k]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw ConfigError("slope fit needs distinct abscissae");
  return (n * sxy - sx * sy) / den;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace ninls
