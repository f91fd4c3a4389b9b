#include "sntd/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace sntd {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) parts.push_back(trim(item));
  if (!text.empty() && text.back() == ',') parts.emplace_back();
  return parts;
}

}  // namespace

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("expected a number, got an empty value");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    throw std::invalid_argument("not a finite number: '" + t + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw std::invalid_argument("not a nonnegative integer: '" + t + "'");
  }
  return v;
}

bool parse_bool(const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw std::invalid_argument("not a boolean: '" + t + "'");
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split_commas(text)) out.push_back(parse_double(p));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& p : split_commas(text)) out.push_back(static_cast<std::size_t>(parse_uint(p)));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

template <typename T>
std::vector<T> broadcast(const std::vector<T>& values, std::size_t order, const char* what) {
  if (values.size() == 1) return std::vector<T>(order, values.front());
  if (values.size() != order) {
    throw std::invalid_argument(std::string(what) + ": expected 1 or " + std::to_string(order) +
                                " values, got " + std::to_string(values.size()));
  }
  return values;
}

template std::vector<double> broadcast(const std::vector<double>&, std::size_t, const char*);
template std::vector<std::size_t> broadcast(const std::vector<std::size_t>&, std::size_t, const char*);

Config Config::parse(std::istream& in, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const auto where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw std::invalid_argument(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument(where + ": empty key");
    if (cfg.entries_.count(key)) throw std::invalid_argument(where + ": duplicate key '" + key + "'");
    cfg.entries_[key] = value;
    cfg.lines_[key] = lineno;
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse(in, path.string());
}

std::optional<std::string> Config::get(const std::string& key) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  used_.insert(key);
  return it->second;
}

std::string Config::require(const std::string& key) {
  auto v = get(key);
  if (!v) throw std::invalid_argument(origin_ + ": missing required key '" + key + "'");
  return *v;
}

namespace {

template <typename F>
auto parse_keyed(const std::string& origin, std::size_t line, const std::string& key,
                 const std::string& value, F&& f) {
  try {
    return f(value);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(origin + ":" + std::to_string(line) + ": key '" + key + "': " + e.what());
  }
}

}  // namespace

std::optional<double> Config::get_double(const std::string& key) {
  auto v = get(key);
  if (!v) return std::nullopt;
  return parse_keyed(origin_, lines_.at(key), key, *v, parse_double);
}

std::optional<std::uint64_t> Config::get_uint(const std::string& key) {
  auto v = get(key);
  if (!v) return std::nullopt;
  return parse_keyed(origin_, lines_.at(key), key, *v, parse_uint);
}

std::optional<bool> Config::get_bool(const std::string& key) {
  auto v = get(key);
  if (!v) return std::nullopt;
  return parse_keyed(origin_, lines_.at(key), key, *v, parse_bool);
}

std::optional<std::vector<double>> Config::get_doubles(const std::string& key) {
  auto v = get(key);
  if (!v) return std::nullopt;
  return parse_keyed(origin_, lines_.at(key), key, *v, parse_double_list);
}

std::optional<std::vector<std::size_t>> Config::get_sizes(const std::string& key) {
  auto v = get(key);
  if (!v) return std::nullopt;
  return parse_keyed(origin_, lines_.at(key), key, *v, parse_size_list);
}

void Config::finish() const {
  std::string unknown;
  for (const auto& [key, value] : entries_) {
    if (used_.count(key)) continue;
    if (!unknown.empty()) unknown += ", ";
    unknown += key + " (line " + std::to_string(lines_.at(key)) + ")";
  }
  if (!unknown.empty()) throw std::invalid_argument(origin_ + ": unknown keys: " + unknown);
}

}  // namespace sntd
