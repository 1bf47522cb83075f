#pragma once

#include <cstddef>
#include <string_view>
#include <utility>

#include "setinfo/density.hpp"

namespace setinfo {

enum class RewardScheme {
  Margin,       // min(I(X,Y) - I(Y,Z), I(Y,Z) - I(X,Z))
  XyDominance,  // I(X,Y) - max(I(Y,Z), I(X,Z))
};

std::string_view to_string(RewardScheme scheme);
RewardScheme parse_reward_scheme(std::string_view name);  // throws UnknownScheme

struct OrderingCheck {
  bool satisfied = false;
  std::pair<double, double> margins;  // (i_xy - i_yz, i_yz - i_xz)
};

// Strict I(X,Y) > I(Y,Z) > I(X,Z); ties are not satisfied.
OrderingCheck demarcken_check(const MiRecord& rec);

struct RewardSignal {
  std::size_t step = 0;
  RewardScheme scheme = RewardScheme::Margin;
  double value = 0.0;
  bool satisfied = false;  // the scheme's inequality holds strictly (value > 0)
  double i_xy = 0.0;
  double i_yz = 0.0;
  double i_xz = 0.0;
};

RewardSignal reward(const MiRecord& rec, RewardScheme scheme);

}  // namespace setinfo
