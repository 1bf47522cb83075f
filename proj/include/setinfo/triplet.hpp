#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "setinfo/ngramset.hpp"

namespace setinfo {

// One agent action: a subject / predicate / object segmentation of a span.
struct Triplet {
  LingSet x;
  LingSet y;
  LingSet z;
  std::string origin;

  const std::string& x_text() const { return x.source(); }
  const std::string& y_text() const { return y.source(); }
  const std::string& z_text() const { return z.source(); }
};

// Builds the three gram sets from surface strings; throws EmptyText if any
// of them is empty.
Triplet make_triplet(std::string_view x, std::string_view y, std::string_view z,
                     const GramSpec& spec, std::string origin = {});

enum class AgentLabel { Random, Extractor, GoldFile, Synthetic };

std::string_view to_string(AgentLabel label);

// The action set A_k taken at step k.
struct StepSample {
  std::size_t step = 0;
  std::vector<Triplet> triplets;
  AgentLabel agent = AgentLabel::Random;

  std::size_t size() const { return triplets.size(); }
  std::vector<LingSet> xs() const;
  std::vector<LingSet> ys() const;
  std::vector<LingSet> zs() const;
};

}  // namespace setinfo
