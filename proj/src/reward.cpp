#include "setinfo/reward.hpp"

#include <algorithm>
#include <string>

#include "setinfo/error.hpp"

namespace setinfo {

std::string_view to_string(RewardScheme scheme) {
  switch (scheme) {
    case RewardScheme::Margin: return "margin";
    case RewardScheme::XyDominance: return "xy_dominance";
  }
  return "unknown";
}

RewardScheme parse_reward_scheme(std::string_view name) {
  if (name == "margin") return RewardScheme::Margin;
  if (name == "xy_dominance") return RewardScheme::XyDominance;
  throw Error(ErrorCode::UnknownScheme, "no reward scheme named \"" + std::string(name) + "\"");
}

OrderingCheck demarcken_check(const MiRecord& rec) {
  OrderingCheck out;
  out.margins = {rec.i_xy - rec.i_yz, rec.i_yz - rec.i_xz};
  out.satisfied = out.margins.first > 0.0 && out.margins.second > 0.0;
  return out;
}

RewardSignal reward(const MiRecord& rec, RewardScheme scheme) {
  RewardSignal out;
  out.step = rec.step;
  out.scheme = scheme;
  out.i_xy = rec.i_xy;
  out.i_yz = rec.i_yz;
  out.i_xz = rec.i_xz;
  switch (scheme) {
    case RewardScheme::Margin: {
      const auto check = demarcken_check(rec);
      out.value = std::min(check.margins.first, check.margins.second);
      out.satisfied = check.satisfied;
      return out;
    }
    case RewardScheme::XyDominance:
      out.value = rec.i_xy - std::max(rec.i_yz, rec.i_xz);
      out.satisfied = rec.i_xy > rec.i_yz && rec.i_xy > rec.i_xz;
      return out;
  }
  throw Error(ErrorCode::UnknownScheme, "unhandled reward scheme");
}

}  // namespace setinfo
