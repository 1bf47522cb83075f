#include "setinfo/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "setinfo/error.hpp"

namespace setinfo {

std::string trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
  auto b = std::find_if(s.begin(), s.end(), not_space);
  auto e = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return b < e ? std::string(b, e) : std::string{};
}

std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find(sep, pos);
    if (end == std::string_view::npos) end = s.size();
    std::string item = trim(s.substr(pos, end - pos));
    if (!item.empty()) out.push_back(std::move(item));
    pos = end + 1;
  }
  return out;
}

FlatConfig FlatConfig::parse(std::string_view text, std::string_view origin) {
  FlatConfig cfg;
  cfg.origin_ = origin;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigInvalid, std::string(origin) + ":" + std::to_string(line_no) +
                                                ": expected `key = value`");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) {
      throw Error(ErrorCode::ConfigInvalid,
                  std::string(origin) + ":" + std::to_string(line_no) + ": empty key");
    }
    cfg.entries_[std::move(key)] = trim(std::string_view(line).substr(eq + 1));
  }
  return cfg;
}

FlatConfig FlatConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

bool FlatConfig::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

void FlatConfig::set(std::string key, std::string value) {
  entries_[std::move(key)] = std::move(value);
}

std::optional<std::string> FlatConfig::get(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string FlatConfig::get_string(std::string_view key, std::string_view fallback) const {
  auto v = get(key);
  return v ? *v : std::string(fallback);
}

namespace {
Error bad_value(std::string_view origin, std::string_view key, const std::string& value,
                std::string_view expected) {
  return Error(ErrorCode::ConfigInvalid, std::string(origin) + ": key `" + std::string(key) +
                                             "` = \"" + value + "\" is not " +
                                             std::string(expected));
}

template <typename T>
bool parse_number(const std::string& s, T& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}
}  // namespace

double FlatConfig::get_double(std::string_view key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  double out = 0.0;
  if (!parse_number(*v, out)) throw bad_value(origin_, key, *v, "a number");
  return out;
}

std::size_t FlatConfig::get_size(std::string_view key, std::size_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  std::size_t out = 0;
  if (!parse_number(*v, out)) throw bad_value(origin_, key, *v, "a non-negative integer");
  return out;
}

std::uint64_t FlatConfig::get_u64(std::string_view key, std::uint64_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  std::uint64_t out = 0;
  if (!parse_number(*v, out)) throw bad_value(origin_, key, *v, "a non-negative integer");
  return out;
}

bool FlatConfig::get_bool(std::string_view key, bool fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw bad_value(origin_, key, *v, "a boolean");
}

std::vector<std::string> FlatConfig::get_list(std::string_view key, char sep) const {
  auto v = get(key);
  return v ? split_list(*v, sep) : std::vector<std::string>{};
}

void FlatConfig::require_known(const std::vector<std::string_view>& known) const {
  for (const auto& [key, value] : entries_) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorCode::ConfigInvalid, std::string(origin_) + ": unknown key `" + key + "`");
    }
  }
}

}  // namespace setinfo
