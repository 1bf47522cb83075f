#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace setinfo {

// Which character n-grams make up a set. Characters are UTF-8 code points.
struct GramSpec {
  std::size_t n_min = 1;
  std::size_t n_max = 3;
  bool include_space = true;  // keep grams that contain ' ' (i.e. cross words)

  bool operator==(const GramSpec&) const = default;
};

// One realization of a linguistic random set: a finite set of distinct
// character n-grams together with the surface string it was built from.
// Immutable once built.
class LingSet {
 public:
  LingSet() = default;

  // Builds a set directly from grams; duplicates are collapsed.
  static LingSet from_grams(std::vector<std::string> grams, std::string source = {},
                            GramSpec spec = {});

  const std::vector<std::string>& grams() const { return grams_; }  // sorted
  const std::string& source() const { return source_; }
  const GramSpec& spec() const { return spec_; }
  std::size_t cardinality() const { return grams_.size(); }
  bool empty() const { return grams_.empty(); }
  bool contains(std::string_view gram) const;

  // Sorted JSON array of the grams, for debugging output.
  std::string to_json() const;

  // Set equality on grams; the source string does not take part.
  friend bool operator==(const LingSet& a, const LingSet& b) { return a.grams_ == b.grams_; }

  friend std::size_t hamming(const LingSet& a, const LingSet& b);

 private:
  LingSet(std::vector<std::string> sorted_unique, std::string source, GramSpec spec);

  std::vector<std::string> grams_;
  // Grams of at most 8 bytes packed big-endian into integers; preserves the
  // byte order of grams_. Left empty when any gram does not fit.
  std::vector<std::uint64_t> packed_;
  std::string source_;
  GramSpec spec_;
};

enum class JoinMode { Union, Concat };

// All distinct substrings of `text` with n_min..n_max code points.
// Throws EmptyText when the result would be empty.
LingSet ngram_set(std::string_view text, const GramSpec& spec);
LingSet ngram_set(std::string_view text, std::size_t n_min, std::size_t n_max);

// |a △ b|: the number of grams in exactly one of the two sets.
std::size_t hamming(const LingSet& a, const LingSet& b);

// Union merges gram sets. Concat rebuilds the set from "a.source b.source"
// using a's gram spec, which adds the grams crossing the seam.
LingSet join(const LingSet& a, const LingSet& b, JoinMode mode);

std::string_view to_string(JoinMode mode);
JoinMode parse_join_mode(std::string_view name);

}  // namespace setinfo
