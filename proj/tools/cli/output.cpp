#include "cli/output.hpp"

#include <fstream>
#include <system_error>

namespace ninls::cli {

namespace fs = std::filesystem;

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move " + tmp.string() + " into place");
  }
}

Artifacts::Artifacts(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_))
    throw std::runtime_error("cannot create output directory " + dir_.string());
}

void Artifacts::write(const std::string& name, const std::string& content) {
  write_atomic(dir_ / name, content);
  names_.push_back(name);
}

void Artifacts::report(const std::string& stem, const ProbeReport& r) {
  write(stem + ".json", r.to_json());
  write(stem + "_measured.csv", r.measured_csv());
  summaries_.push_back({stem, r.max_ratio, r.fitted_exponent, r.tolerance_met});
}

Csv::Csv(const std::vector<std::string>& header) {
  for (const auto& h : header) cell(h);
  end_row();
}

Csv& Csv::cell(double v) { return cell(format_double(v)); }
Csv& Csv::cell(long v) { return cell(std::to_string(v)); }

Csv& Csv::cell(const std::string& v) {
  if (!fresh_) s_ += ',';
  s_ += csv_field(v);
  fresh_ = false;
  return *this;
}

void Csv::end_row() {
  s_ += '\n';
  fresh_ = true;
}

}  // namespace ninls::cli
