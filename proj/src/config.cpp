#include "hdclt/config.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "hdclt/errors.hpp"

namespace hdclt {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Strip a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

bool looks_like_int(const std::string& s) {
  if (s.find_first_of(".eE") != std::string::npos) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Config::Value parse_scalar(const std::string& raw, int lineno) {
  const std::string s = trim(raw);
  if (s.empty()) throw config_error("config: empty value at line " + std::to_string(lineno));
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"')
      throw config_error("config: unterminated string at line " + std::to_string(lineno));
    return s.substr(1, s.size() - 2);
  }
  if (s == "true") return true;
  if (s == "false") return false;
  try {
    if (looks_like_int(s)) return static_cast<long>(std::stoll(s));
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw config_error("config: cannot parse value '" + s + "' at line " +
                       std::to_string(lineno));
  }
}

Config::Value parse_array(const std::string& inner, int lineno) {
  std::vector<std::string> items;
  std::string cur;
  bool quoted = false;
  for (char c : inner) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) items.push_back(cur);

  bool all_strings = true, all_numbers = true;
  std::vector<double> nums;
  std::vector<std::string> strs;
  for (const auto& item : items) {
    Config::Value v = parse_scalar(item, lineno);
    if (auto* d = std::get_if<double>(&v)) {
      nums.push_back(*d);
      all_strings = false;
    } else if (auto* l = std::get_if<long>(&v)) {
      nums.push_back(static_cast<double>(*l));
      all_strings = false;
    } else if (auto* str = std::get_if<std::string>(&v)) {
      strs.push_back(*str);
      all_numbers = false;
    } else {
      throw config_error("config: unsupported array element at line " +
                         std::to_string(lineno));
    }
  }
  if (all_numbers) return nums;
  if (all_strings) return strs;
  throw config_error("config: mixed array types at line " + std::to_string(lineno));
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, table;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("config: malformed table header at line " +
                           std::to_string(lineno));
      table = trim(line.substr(1, line.size() - 2));
      if (table.empty())
        throw config_error("config: empty table name at line " +
                           std::to_string(lineno));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config: expected key = value at line " +
                         std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw config_error("config: empty key at line " + std::to_string(lineno));
    const std::string full = table.empty() ? key : table + "." + key;
    if (!val.empty() && val.front() == '[') {
      if (val.back() != ']')
        throw config_error("config: unterminated array at line " +
                           std::to_string(lineno));
      cfg.values_[full] = parse_array(val.substr(1, val.size() - 2), lineno);
    } else {
      cfg.values_[full] = parse_scalar(val, lineno);
    }
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw config_error("config: missing key '" + key + "'");
  if (auto* s = std::get_if<std::string>(&it->second)) return *s;
  throw config_error("config: key '" + key + "' is not a string");
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

long Config::get_int(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw config_error("config: missing key '" + key + "'");
  if (auto* l = std::get_if<long>(&it->second)) return *l;
  throw config_error("config: key '" + key + "' is not an integer");
}

long Config::get_int(const std::string& key, long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

double Config::get_double(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw config_error("config: missing key '" + key + "'");
  if (auto* d = std::get_if<double>(&it->second)) return *d;
  if (auto* l = std::get_if<long>(&it->second)) return static_cast<double>(*l);
  throw config_error("config: key '" + key + "' is not numeric");
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (auto* b = std::get_if<bool>(&it->second)) return *b;
  throw config_error("config: key '" + key + "' is not a boolean");
}

std::vector<double> Config::get_double_array(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw config_error("config: missing key '" + key + "'");
  if (auto* a = std::get_if<std::vector<double>>(&it->second)) return *a;
  if (auto* d = std::get_if<double>(&it->second)) return {*d};
  if (auto* l = std::get_if<long>(&it->second))
    return {static_cast<double>(*l)};
  throw config_error("config: key '" + key + "' is not a numeric array");
}

std::vector<double> Config::get_double_array(const std::string& key,
                                             std::vector<double> fallback) const {
  return has(key) ? get_double_array(key) : fallback;
}

std::string Config::canonical() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& [key, value] : values_) {
    out << key << "=";
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::vector<double>>) {
            for (std::size_t i = 0; i < v.size(); ++i)
              out << (i ? "," : "") << v[i];
          } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
            for (std::size_t i = 0; i < v.size(); ++i)
              out << (i ? "," : "") << v[i];
          } else if constexpr (std::is_same_v<T, bool>) {
            out << (v ? "true" : "false");
          } else {
            out << v;
          }
        },
        value);
    out << "\n";
  }
  return out.str();
}

std::string Config::hash() const {
  const std::string text = canonical();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace hdclt
