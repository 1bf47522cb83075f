#include "setinfo/ngramset.hpp"

#include <algorithm>
#include <iterator>

#include <json.hpp>

#include "setinfo/error.hpp"

namespace setinfo {
namespace {

bool is_lead_byte(char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }

std::vector<std::uint64_t> pack(const std::vector<std::string>& grams) {
  std::vector<std::uint64_t> keys;
  keys.reserve(grams.size());
  for (const auto& g : grams) {
    if (g.size() > 8 || g.find('\0') != std::string::npos) return {};
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      key <<= 8;
      if (i < g.size()) key |= static_cast<unsigned char>(g[i]);
    }
    keys.push_back(key);
  }
  return keys;
}

template <typename T>
std::size_t symmetric_difference_size(const std::vector<T>& a, const std::vector<T>& b) {
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return a.size() + b.size() - 2 * common;
}

}  // namespace

LingSet::LingSet(std::vector<std::string> sorted_unique, std::string source, GramSpec spec)
    : grams_(std::move(sorted_unique)), packed_(pack(grams_)), source_(std::move(source)),
      spec_(spec) {}

LingSet LingSet::from_grams(std::vector<std::string> grams, std::string source, GramSpec spec) {
  std::sort(grams.begin(), grams.end());
  grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
  return LingSet(std::move(grams), std::move(source), spec);
}

bool LingSet::contains(std::string_view gram) const {
  return std::binary_search(grams_.begin(), grams_.end(), gram,
                            [](std::string_view l, std::string_view r) { return l < r; });
}

std::string LingSet::to_json() const { return nlohmann::json(grams_).dump(); }

LingSet ngram_set(std::string_view text, const GramSpec& spec) {
  if (spec.n_min < 1 || spec.n_max < spec.n_min) {
    throw Error(ErrorCode::ConfigInvalid, "n-gram range must satisfy 1 <= n_min <= n_max");
  }
  if (text.empty()) throw Error(ErrorCode::EmptyText, "cannot build a set from empty text");

  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_lead_byte(text[i])) starts.push_back(i);
  }
  starts.push_back(text.size());
  const std::size_t chars = starts.size() - 1;

  std::vector<std::string> grams;
  for (std::size_t i = 0; i < chars; ++i) {
    for (std::size_t n = spec.n_min; n <= spec.n_max && i + n <= chars; ++n) {
      std::string_view gram = text.substr(starts[i], starts[i + n] - starts[i]);
      if (!spec.include_space && gram.find(' ') != std::string_view::npos) continue;
      grams.emplace_back(gram);
    }
  }
  if (grams.empty()) {
    throw Error(ErrorCode::EmptyText, "no n-grams in \"" + std::string(text) + "\"");
  }
  return LingSet::from_grams(std::move(grams), std::string(text), spec);
}

LingSet ngram_set(std::string_view text, std::size_t n_min, std::size_t n_max) {
  return ngram_set(text, GramSpec{n_min, n_max, true});
}

std::size_t hamming(const LingSet& a, const LingSet& b) {
  if (!a.packed_.empty() && !b.packed_.empty()) {
    return symmetric_difference_size(a.packed_, b.packed_);
  }
  return symmetric_difference_size(a.grams_, b.grams_);
}

LingSet join(const LingSet& a, const LingSet& b, JoinMode mode) {
  std::string source = a.source() + " " + b.source();
  if (mode == JoinMode::Concat) return ngram_set(source, a.spec());
  std::vector<std::string> merged;
  merged.reserve(a.cardinality() + b.cardinality());
  std::set_union(a.grams().begin(), a.grams().end(), b.grams().begin(), b.grams().end(),
                 std::back_inserter(merged));
  return LingSet::from_grams(std::move(merged), std::move(source), a.spec());
}

std::string_view to_string(JoinMode mode) {
  return mode == JoinMode::Union ? "union" : "concat";
}

JoinMode parse_join_mode(std::string_view name) {
  if (name == "union") return JoinMode::Union;
  if (name == "concat") return JoinMode::Concat;
  throw Error(ErrorCode::ConfigInvalid, "unknown join mode \"" + std::string(name) + "\"");
}

}  // namespace setinfo
