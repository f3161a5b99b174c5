#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace hdclt {

/// Flat view of a TOML-style key/value file with [table] headers. Values are
/// addressed as "table.key". Only the constructs the experiment configs need
/// are supported: strings, booleans, numbers, and flat arrays.
class Config {
 public:
  using Value = std::variant<bool, long, double, std::string,
                             std::vector<double>, std::vector<std::string>>;

  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_array(const std::string& key) const;
  std::vector<double> get_double_array(const std::string& key,
                                       std::vector<double> fallback) const;

  void set(const std::string& key, Value v) { values_[key] = std::move(v); }

  /// FNV-1a hash of the canonical "key=value" serialization (sorted keys).
  std::string hash() const;
  std::string canonical() const;

 private:
  std::map<std::string, Value> values_;
};

}  // namespace hdclt
