#include "cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ninls/error.hpp"

namespace ninls::cli {

const Json Block::kEmpty = Json::object();

Block::Block(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) throw ConfigError(path_ + " must be a JSON object");
}

bool Block::has(const std::string& key) const { return j_.contains(key); }

const Json* Block::find(const std::string& key) {
  used_.insert(key);
  auto it = j_.find(key);
  if (it == j_.end() || it->is_null()) return nullptr;
  return &*it;
}

double Block::number(const std::string& key, double fallback) {
  const Json* v = find(key);
  if (!v) return fallback;
  if (!v->is_number()) throw ConfigError(where(key) + " must be a number");
  const double d = v->get<double>();
  if (!std::isfinite(d)) throw ConfigError(where(key) + " must be finite");
  return d;
}

long Block::integer(const std::string& key, long fallback) {
  const Json* v = find(key);
  if (!v) return fallback;
  if (v->is_number_integer()) return v->get<long>();
  // 16.0 is accepted, 16.5 is not
  if (v->is_number_float()) {
    const double d = v->get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long>(d);
  }
  throw ConfigError(where(key) + " must be an integer");
}

bool Block::boolean(const std::string& key, bool fallback) {
  const Json* v = find(key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw ConfigError(where(key) + " must be true or false");
  return v->get<bool>();
}

std::string Block::text(const std::string& key, const std::string& fallback) {
  const Json* v = find(key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError(where(key) + " must be a string");
  return v->get<std::string>();
}

std::vector<double> Block::numbers(const std::string& key, const std::vector<double>& fallback) {
  const Json* v = find(key);
  if (!v) return fallback;
  if (!v->is_array() || v->empty()) throw ConfigError(where(key) + " must be a nonempty array");
  std::vector<double> out;
  for (const auto& e : *v) {
    if (!e.is_number()) throw ConfigError(where(key) + " must contain numbers only");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<long> Block::integers(const std::string& key, const std::vector<long>& fallback) {
  const Json* v = find(key);
  if (!v) return fallback;
  if (!v->is_array() || v->empty()) throw ConfigError(where(key) + " must be a nonempty array");
  std::vector<long> out;
  for (const auto& e : *v) {
    if (!e.is_number_integer()) throw ConfigError(where(key) + " must contain integers only");
    out.push_back(e.get<long>());
  }
  return out;
}

Block Block::child(const std::string& key) {
  const Json* v = find(key);
  return Block(v ? *v : kEmpty, where(key));
}

void Block::finish() const {
  std::string unknown;
  for (auto it = j_.begin(); it != j_.end(); ++it) {
    if (used_.count(it.key())) continue;
    unknown += unknown.empty() ? "" : ", ";
    unknown += path_ + "." + it.key();
  }
  if (!unknown.empty()) throw ConfigError("unknown config key(s): " + unknown);
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  return j;
}

ModelParams read_model(Block b, int default_epsilon) {
  ModelParams m;
  m.epsilon = static_cast<int>(b.integer("epsilon", default_epsilon));
  m.alpha = b.number("alpha", m.alpha);
  m.sign = parse_nonlinearity(b.text("sign", to_string(m.sign)));
  b.finish();
  m.validate();
  return m;
}

DomainSpec read_domain(Block b, Geometry default_geometry) {
  const Geometry g = parse_geometry(b.text("geometry", to_string(default_geometry)));
  DomainSpec d = g == Geometry::TxT   ? DomainSpec::torus(32, 32)
                 : g == Geometry::TxR ? DomainSpec::cylinder_txr(32, 256)
                                      : DomainSpec::cylinder_rxt(256, 32);
  d.nx = static_cast<int>(b.integer("nx", d.nx));
  d.ny = static_cast<int>(b.integer("ny", d.ny));
  d.period_x = b.number("period_x", d.period_x);
  d.period_y = b.number("period_y", d.period_y);
  b.finish();
  d.validate();
  return d;
}

std::uint64_t config_hash(const Json& j) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace ninls::cli
