#pragma once

// Line-oriented `key = value` configuration files.
//
// Blank lines and text after '#' are ignored. Keys may appear once. Callers
// read the keys they understand and then call finish(), which rejects any key
// that was never read.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sntd {

class Config {
 public:
  static Config parse(std::istream& in, const std::string& origin = "<config>");
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key);
  std::string require(const std::string& key);

  std::optional<double> get_double(const std::string& key);
  std::optional<std::uint64_t> get_uint(const std::string& key);
  std::optional<bool> get_bool(const std::string& key);
  std::optional<std::vector<double>> get_doubles(const std::string& key);
  std::optional<std::vector<std::size_t>> get_sizes(const std::string& key);

  /// Throws std::invalid_argument naming every key that was never read.
  void finish() const;

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::map<std::string, std::string> entries_;
  std::map<std::string, std::size_t> lines_;
  std::set<std::string> used_;
};

// Value parsers shared with the command line. All throw std::invalid_argument
// with the offending text on malformed input.
double parse_double(const std::string& text);
std::uint64_t parse_uint(const std::string& text);
bool parse_bool(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);

/// A list of length 1 broadcast to `order` entries; other lengths must match.
template <typename T>
std::vector<T> broadcast(const std::vector<T>& values, std::size_t order, const char* what);

}  // namespace sntd
