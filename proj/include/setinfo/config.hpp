#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace setinfo {

// Flat `key = value` text configuration. '#' starts a comment line; later
// keys override earlier ones.
class FlatConfig {
 public:
  static FlatConfig parse(std::string_view text, std::string_view origin = "<config>");
  static FlatConfig load(const std::filesystem::path& path);

  bool has(std::string_view key) const;
  void set(std::string key, std::string value);

  std::optional<std::string> get(std::string_view key) const;
  std::string get_string(std::string_view key, std::string_view fallback) const;
  double get_double(std::string_view key, double fallback) const;
  std::size_t get_size(std::string_view key, std::size_t fallback) const;
  std::uint64_t get_u64(std::string_view key, std::uint64_t fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;
  // Splits on `sep` and trims each item; empty items are dropped.
  std::vector<std::string> get_list(std::string_view key, char sep = ',') const;

  // Throws ConfigInvalid naming the first key not in `known`.
  void require_known(const std::vector<std::string_view>& known) const;

  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
  std::string origin_;
};

std::string trim(std::string_view s);
std::vector<std::string> split_list(std::string_view s, char sep);

}  // namespace setinfo
