#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ninls/report.hpp"

namespace ninls::cli {

// Writes content to a sibling temp file and renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

class Artifacts {
 public:
  explicit Artifacts(std::filesystem::path dir);

  void write(const std::string& name, const std::string& content);
  // <stem>.json plus <stem>_measured.csv
  void report(const std::string& stem, const ProbeReport& r);

  const std::filesystem::path& dir() const { return dir_; }
  const std::vector<std::string>& names() const { return names_; }

  // One line per report written so far, for the manifest.
  struct Summary {
    std::string stem;
    double max_ratio;
    std::optional<double> fitted_exponent;
    bool tolerance_met;
  };
  const std::vector<Summary>& summaries() const { return summaries_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> names_;
  std::vector<Summary> summaries_;
};

// Minimal CSV builder; doubles go through format_double so output is exact
// and locale independent.
class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header);
  Csv& cell(double v);
  Csv& cell(long v);
  Csv& cell(const std::string& v);
  void end_row();
  const std::string& str() const { return s_; }

 private:
  std::string s_;
  bool fresh_ = true;
};

}  // namespace ninls::cli
