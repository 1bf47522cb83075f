#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "setinfo/ngramset.hpp"
#include "setinfo/triplet.hpp"

namespace setinfo {

enum class EntropyMode {
  Normalized,    // capacities rescaled to sum to one before -sum p ln p
  PaperLiteral,  // -sum P ln P on the raw capacities
};

struct EstimatorConfig {
  double bandwidth = 5.0;
  EntropyMode entropy_mode = EntropyMode::Normalized;
  JoinMode joint_mode = JoinMode::Union;

  void validate() const;  // throws ConfigInvalid unless bandwidth > 0
};

std::string_view to_string(EntropyMode mode);
EntropyMode parse_entropy_mode(std::string_view name);

// Gaussian kernel on the symmetric-difference distance:
//   f(h) = exp(-h^2 / (2 bw^2)) / sqrt(2 pi bw^2)
double kernel_at(double distance, double bandwidth);
double kernel(const LingSet& a, const LingSet& b, double bandwidth);
inline double kernel_max(double bandwidth) { return kernel_at(0.0, bandwidth); }

// Mean kernel value between `target` and every member of `sample`.
double capacity(const LingSet& target, std::span<const LingSet> sample,
                const EstimatorConfig& cfg);

// Resubstitution capacity of each member against the whole list, summed in
// index order.
std::vector<double> capacities(std::span<const LingSet> values, double bandwidth);

double entropy_from_capacities(std::span<const double> caps, EntropyMode mode);

// All estimators below take paired columns of equal, non-zero length and
// throw EmptySample otherwise. Entropies are in nats.
double entropy(std::span<const LingSet> values, const EstimatorConfig& cfg);

std::vector<LingSet> join_columns(std::span<const LingSet> first, std::span<const LingSet> second,
                                  JoinMode mode);

double joint_entropy(std::span<const LingSet> first, std::span<const LingSet> second,
                     const EstimatorConfig& cfg);

// H(target | cond) = H(cond, target) - H(cond).
double conditional_entropy(std::span<const LingSet> cond, std::span<const LingSet> target,
                           const EstimatorConfig& cfg);

// I(first, second) = H(first) + H(second) - H(first, second). May be negative.
double mutual_information(std::span<const LingSet> first, std::span<const LingSet> second,
                          const EstimatorConfig& cfg);

enum class JointMarginal { XY_vs_Z, XZ_vs_Y };

// I(X,Y;Z) or I(X,Z;Y): MI between a joined pair and the remaining marginal.
double joint_marginal_mi(std::span<const LingSet> x, std::span<const LingSet> y,
                         std::span<const LingSet> z, JointMarginal which,
                         const EstimatorConfig& cfg);

// P(X,Y,Z) = P(Y|X,Z) P(Z|X) P(X), with each conditional a ratio of joint
// capacities. Throws DegenerateDenominator when P(X) or P(X,Z) is zero.
double triplet_likelihood(const Triplet& t, const StepSample& sample, const EstimatorConfig& cfg);

// Capacity of join(join(x, y), z) against the same joins over the sample.
double joint_capacity(const Triplet& t, const StepSample& sample, const EstimatorConfig& cfg);

struct MiRecord {
  std::size_t step = 0;
  double i_xy = 0.0;
  double i_yz = 0.0;
  double i_xz = 0.0;
  double i_xy_z = 0.0;
  double i_xz_y = 0.0;
  double h_x = 0.0;
  double h_y = 0.0;
  double h_z = 0.0;
  std::size_t sample_size = 0;
  // Members whose joint capacity P(W,W') exceeded a marginal P(W), out of
  // all (member, pair, marginal) comparisons made for the step.
  std::size_t joint_exceeds_marginal = 0;
  std::size_t joint_comparisons = 0;
};

MiRecord measure_step(const StepSample& sample, const EstimatorConfig& cfg);

}  // namespace setinfo
