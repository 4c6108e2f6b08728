#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ninls/spectral.hpp"

namespace ninls::cli {

using Json = nlohmann::json;

// Typed access to one JSON object. Every key read is remembered; finish()
// rejects whatever was never asked for.
class Block {
 public:
  Block(const Json& j, std::string path);

  bool has(const std::string& key) const;
  double number(const std::string& key, double fallback);
  long integer(const std::string& key, long fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<long> integers(const std::string& key, const std::vector<long>& fallback);
  // Sub-object; an absent key gives an empty block.
  Block child(const std::string& key);

  void finish() const;
  const std::string& path() const { return path_; }

 private:
  const Json* find(const std::string& key);
  std::string where(const std::string& key) const { return path_ + "." + key; }

  const Json& j_;
  std::string path_;
  std::set<std::string> used_;
  static const Json kEmpty;
};

// Parses the whole file; syntax errors and a non-object root become ConfigError.
Json load_config(const std::string& path);

ModelParams read_model(Block b, int default_epsilon = 1);
DomainSpec read_domain(Block b, Geometry default_geometry);

// 64-bit FNV-1a of the canonical (sorted-key, compact) dump.
std::uint64_t config_hash(const Json& j);
std::string hex64(std::uint64_t v);

}  // namespace ninls::cli
