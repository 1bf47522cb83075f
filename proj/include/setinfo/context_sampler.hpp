#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "setinfo/corpus.hpp"
#include "setinfo/rng.hpp"

namespace setinfo {

// Tokenizes a collection once so repeated context draws stay cheap. Holds a
// reference to `docs`, which must outlive the sampler.
class ContextSampler {
 public:
  ContextSampler(const DocumentCollection& docs, std::size_t length);

  std::vector<Context> sample(std::size_t n, Rng& rng) const;

  std::size_t length() const { return length_; }

 private:
  struct Eligible {
    const Document* doc;
    std::vector<std::string> tokens;
  };

  std::size_t length_;
  std::vector<Eligible> eligible_;
};

}  // namespace setinfo
