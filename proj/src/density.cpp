#include "setinfo/density.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "setinfo/error.hpp"

namespace setinfo {
namespace {

void require_sample(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::EmptySample, "estimator needs a non-empty sample");
}

void require_paired(std::span<const LingSet> a, std::span<const LingSet> b) {
  require_sample(a.size());
  if (a.size() != b.size()) {
    throw Error(ErrorCode::EmptySample, "paired columns differ in length (" +
                                            std::to_string(a.size()) + " vs " +
                                            std::to_string(b.size()) + ")");
  }
}

double entropy_of(std::span<const LingSet> values, const EstimatorConfig& cfg) {
  const auto caps = capacities(values, cfg.bandwidth);
  return entropy_from_capacities(caps, cfg.entropy_mode);
}

std::size_t count_exceeding(const std::vector<double>& joint, const std::vector<double>& marginal) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    if (joint[i] > marginal[i]) ++n;
  }
  return n;
}

}  // namespace

void EstimatorConfig::validate() const {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw Error(ErrorCode::ConfigInvalid, "bandwidth must be a positive finite number");
  }
}

std::string_view to_string(EntropyMode mode) {
  return mode == EntropyMode::Normalized ? "normalized" : "paper_literal";
}

EntropyMode parse_entropy_mode(std::string_view name) {
  if (name == "normalized") return EntropyMode::Normalized;
  if (name == "paper_literal") return EntropyMode::PaperLiteral;
  throw Error(ErrorCode::ConfigInvalid, "unknown entropy mode \"" + std::string(name) + "\"");
}

double kernel_at(double distance, double bandwidth) {
  const double var = bandwidth * bandwidth;
  return std::exp(-distance * distance / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

double kernel(const LingSet& a, const LingSet& b, double bandwidth) {
  return kernel_at(static_cast<double>(hamming(a, b)), bandwidth);
}

double capacity(const LingSet& target, std::span<const LingSet> sample,
                const EstimatorConfig& cfg) {
  require_sample(sample.size());
  double sum = 0.0;
  for (const auto& s : sample) sum += kernel(target, s, cfg.bandwidth);
  return sum / static_cast<double>(sample.size());
}

std::vector<double> capacities(std::span<const LingSet> values, double bandwidth) {
  const std::size_t n = values.size();
  require_sample(n);
  // Kernel matrix filled symmetrically, then each row summed left to right so
  // the result does not depend on evaluation order.
  std::vector<double> k(n * n);
  const double self = kernel_max(bandwidth);
  for (std::size_t i = 0; i < n; ++i) {
    k[i * n + i] = self;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = kernel(values[i], values[j], bandwidth);
      k[i * n + j] = v;
      k[j * n + i] = v;
    }
  }
  std::vector<double> caps(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += k[i * n + j];
    caps[i] = sum / static_cast<double>(n);
  }
  return caps;
}

double entropy_from_capacities(std::span<const double> caps, EntropyMode mode) {
  require_sample(caps.size());
  double scale = 1.0;
  if (mode == EntropyMode::Normalized) {
    double total = 0.0;
    for (double p : caps) total += p;
    scale = total;
  }
  double h = 0.0;
  for (double raw : caps) {
    const double p = raw / scale;
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double entropy(std::span<const LingSet> values, const EstimatorConfig& cfg) {
  require_sample(values.size());
  return entropy_of(values, cfg);
}

std::vector<LingSet> join_columns(std::span<const LingSet> first, std::span<const LingSet> second,
                                  JoinMode mode) {
  require_paired(first, second);
  std::vector<LingSet> out;
  out.reserve(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out.push_back(join(first[i], second[i], mode));
  return out;
}

double joint_entropy(std::span<const LingSet> first, std::span<const LingSet> second,
                     const EstimatorConfig& cfg) {
  return entropy_of(join_columns(first, second, cfg.joint_mode), cfg);
}

double conditional_entropy(std::span<const LingSet> cond, std::span<const LingSet> target,
                           const EstimatorConfig& cfg) {
  return joint_entropy(cond, target, cfg) - entropy(cond, cfg);
}

double mutual_information(std::span<const LingSet> first, std::span<const LingSet> second,
                          const EstimatorConfig& cfg) {
  require_paired(first, second);
  return entropy_of(first, cfg) + entropy_of(second, cfg) - joint_entropy(first, second, cfg);
}

double joint_marginal_mi(std::span<const LingSet> x, std::span<const LingSet> y,
                         std::span<const LingSet> z, JointMarginal which,
                         const EstimatorConfig& cfg) {
  require_paired(x, y);
  require_paired(x, z);
  if (which == JointMarginal::XY_vs_Z) {
    const auto xy = join_columns(x, y, cfg.joint_mode);
    return mutual_information(xy, z, cfg);
  }
  const auto xz = join_columns(x, z, cfg.joint_mode);
  return mutual_information(xz, y, cfg);
}

double triplet_likelihood(const Triplet& t, const StepSample& sample, const EstimatorConfig& cfg) {
  require_sample(sample.size());
  const auto xs = sample.xs();
  const auto zs = sample.zs();
  const auto xz = join_columns(xs, zs, cfg.joint_mode);

  const double p_x = capacity(t.x, xs, cfg);
  const double p_xz = capacity(join(t.x, t.z, cfg.joint_mode), xz, cfg);
  const double p_xyz = joint_capacity(t, sample, cfg);
  if (p_x == 0.0 || p_xz == 0.0) {
    throw Error(ErrorCode::DegenerateDenominator,
                std::string("conditional denominator underflowed to zero (") +
                    (p_x == 0.0 ? "P(X)" : "P(X,Z)") + ")");
  }
  const double p_y_given_xz = p_xyz / p_xz;
  const double p_z_given_x = p_xz / p_x;
  return p_y_given_xz * p_z_given_x * p_x;
}

double joint_capacity(const Triplet& t, const StepSample& sample, const EstimatorConfig& cfg) {
  require_sample(sample.size());
  const auto xy = join_columns(sample.xs(), sample.ys(), cfg.joint_mode);
  const auto xyz = join_columns(xy, sample.zs(), cfg.joint_mode);
  return capacity(join(join(t.x, t.y, cfg.joint_mode), t.z, cfg.joint_mode), xyz, cfg);
}

MiRecord measure_step(const StepSample& sample, const EstimatorConfig& cfg) {
  require_sample(sample.size());
  const auto mode = cfg.joint_mode;
  const auto xs = sample.xs();
  const auto ys = sample.ys();
  const auto zs = sample.zs();
  const auto xy = join_columns(xs, ys, mode);
  const auto yz = join_columns(ys, zs, mode);
  const auto xz = join_columns(xs, zs, mode);
  const auto xy_z = join_columns(xy, zs, mode);
  const auto xz_y = join_columns(xz, ys, mode);

  const double bw = cfg.bandwidth;
  const auto c_x = capacities(xs, bw);
  const auto c_y = capacities(ys, bw);
  const auto c_z = capacities(zs, bw);
  const auto c_xy = capacities(xy, bw);
  const auto c_yz = capacities(yz, bw);
  const auto c_xz = capacities(xz, bw);

  const auto h = [&](const std::vector<double>& c) {
    return entropy_from_capacities(c, cfg.entropy_mode);
  };
  MiRecord rec;
  rec.step = sample.step;
  rec.sample_size = sample.size();
  rec.h_x = h(c_x);
  rec.h_y = h(c_y);
  rec.h_z = h(c_z);
  const double h_xy = h(c_xy);
  const double h_xz = h(c_xz);
  rec.i_xy = rec.h_x + rec.h_y - h_xy;
  rec.i_yz = rec.h_y + rec.h_z - h(c_yz);
  rec.i_xz = rec.h_x + rec.h_z - h_xz;
  rec.i_xy_z = h_xy + rec.h_z - h(capacities(xy_z, bw));
  rec.i_xz_y = h_xz + rec.h_y - h(capacities(xz_y, bw));

  rec.joint_exceeds_marginal = count_exceeding(c_xy, c_x) + count_exceeding(c_xy, c_y) +
                               count_exceeding(c_yz, c_y) + count_exceeding(c_yz, c_z) +
                               count_exceeding(c_xz, c_x) + count_exceeding(c_xz, c_z);
  rec.joint_comparisons = 6 * sample.size();
  return rec;
}

}  // namespace setinfo
