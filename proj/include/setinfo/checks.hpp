#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace setinfo {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Quick self-test of the library's invariants on small random instances:
// metric axioms, kernel bounds, estimator identities, entropy range, reward
// consistency and rolling-mean affinity. `trials` scales every check.
std::vector<CheckResult> run_invariant_checks(std::uint64_t seed, std::size_t trials = 200);

}  // namespace setinfo
