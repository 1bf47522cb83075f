#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <random>

#include "setinfo/density.hpp"
#include "test_helpers.hpp"

using namespace setinfo;

namespace {

// Reference values computed independently (closed-form evaluation in Python):
//   f(h) = exp(-h^2 / 50) / sqrt(50 pi)
constexpr double kF0 = 0.07978845608028654;
constexpr double kF5 = 0.04839414490382867;
constexpr double kF10 = 0.01079819330263761;
constexpr double kMeanF0F5 = 0.0640913004920576;
constexpr double kLiteralSingle = 0.20173525298728023;  // -f(0) ln f(0)

EstimatorConfig normalized() { return {}; }

EstimatorConfig literal() {
  EstimatorConfig cfg;
  cfg.entropy_mode = EntropyMode::PaperLiteral;
  return cfg;
}

// Set with `n` grams that no other set built by this helper shares, unless
// the same tag is reused.
LingSet tagged(const std::string& tag, std::size_t n) {
  std::vector<std::string> grams;
  for (std::size_t i = 0; i < n; ++i) grams.push_back(tag + std::to_string(i));
  return LingSet::from_grams(grams, tag);
}

std::vector<LingSet> random_sets(std::mt19937_64& gen, std::size_t n) {
  std::vector<LingSet> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s;
    const std::size_t len = 1 + gen() % 10;
    for (std::size_t c = 0; c < len; ++c) s.push_back("abc "[gen() % 4]);
    out.push_back(ngram_set(s, 1, 3));
  }
  return out;
}

// Plug-in entropy straight from the definition, sharing no code with the
// library's estimator loops.
double oracle_entropy(const std::vector<LingSet>& xs, double bw, bool normalize) {
  const double n = static_cast<double>(xs.size());
  std::vector<double> p;
  for (const auto& a : xs) {
    double s = 0.0;
    for (const auto& b : xs) {
      std::vector<std::string> diff;
      std::set_symmetric_difference(a.grams().begin(), a.grams().end(), b.grams().begin(),
                                    b.grams().end(), std::back_inserter(diff));
      const double h = static_cast<double>(diff.size());
      s += std::exp(-h * h / (2 * bw * bw)) / std::sqrt(2 * M_PI * bw * bw);
    }
    p.push_back(s / n);
  }
  const double total = normalize ? std::accumulate(p.begin(), p.end(), 0.0) : 1.0;
  double h = 0.0;
  for (double v : p) h -= (v / total) * std::log(v / total);
  return h;
}

}  // namespace

TEST(Kernel, ClosedFormValues) {
  EXPECT_NEAR(kernel_at(0, 5.0), kF0, 1e-15);
  EXPECT_NEAR(kernel_at(5, 5.0), kF5, 1e-15);
  EXPECT_NEAR(kernel_at(10, 5.0), kF10, 1e-15);
  EXPECT_NEAR(kernel_max(5.0), kF0, 1e-15);
  // h is the symmetric difference of the two sets.
  EXPECT_NEAR(kernel(tagged("a", 3), tagged("a", 3), 5.0), kF0, 1e-15);
  EXPECT_NEAR(kernel(tagged("a", 2), tagged("b", 3), 5.0), kF5, 1e-15);
}

TEST(Kernel, StrictlyDecreasingAndBounded) {
  for (double bw : {0.5, 1.0, 5.0, 20.0}) {
    double prev = kernel_max(bw);
    for (int h = 1; h < 200; ++h) {
      const double k = kernel_at(h, bw);
      if (k == 0.0) break;  // underflow at large h/bw
      EXPECT_LT(k, prev);
      EXPECT_GT(k, 0.0);
      prev = k;
    }
  }
}

TEST(Capacity, Examples) {
  const auto a = tagged("a", 3);
  const auto b = tagged("b", 2);  // h(a, b) = 5
  const std::vector<LingSet> one{a};
  EXPECT_NEAR(capacity(a, one, normalized()), kF0, 1e-15);
  const std::vector<LingSet> two{a, b};
  EXPECT_NEAR(capacity(a, two, normalized()), kMeanF0F5, 1e-15);
  const std::vector<LingSet> copies(17, a);
  EXPECT_NEAR(capacity(a, copies, normalized()), kF0, 1e-15);
  EXPECT_EQ(code_of([&] { capacity(a, {}, normalized()); }), ErrorCode::EmptySample);
}

TEST(Capacity, PermutationInvariantAndBounded) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto sample = random_sets(gen, 1 + gen() % 15);
    const auto target = random_sets(gen, 1)[0];
    const double before = capacity(target, sample, normalized());
    std::shuffle(sample.begin(), sample.end(), gen);
    EXPECT_NEAR(capacity(target, sample, normalized()), before, 1e-15);
    EXPECT_GT(before, 0.0);
    EXPECT_LE(before, kF0 + 1e-15);
  }
}

TEST(Capacities, MatchPerMemberCapacity) {
  std::mt19937_64 gen(10);
  const auto sample = random_sets(gen, 12);
  const auto caps = capacities(sample, 5.0);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    EXPECT_NEAR(caps[i], capacity(sample[i], sample, normalized()), 1e-15);
  }
}

TEST(Entropy, Examples) {
  const auto a = ngram_set("the cat", 1, 3);
  const auto a2 = ngram_set("the cat", 1, 3);
  const std::vector<LingSet> pair{a, a2};
  EXPECT_NEAR(entropy(pair, normalized()), std::log(2.0), 1e-15);
  const std::vector<LingSet> single{a};
  EXPECT_NEAR(entropy(single, literal()), kLiteralSingle, 1e-15);
  EXPECT_NEAR(entropy(single, normalized()), 0.0, 1e-15);
  EXPECT_EQ(code_of([] { entropy({}, EstimatorConfig{}); }), ErrorCode::EmptySample);
}

TEST(Entropy, MatchesOracleInBothModes) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto xs = random_sets(gen, 1 + gen() % 20);
    EXPECT_NEAR(entropy(xs, normalized()), oracle_entropy(xs, 5.0, true), 1e-12);
    EXPECT_NEAR(entropy(xs, literal()), oracle_entropy(xs, 5.0, false), 1e-12);
  }
}

TEST(Entropy, NormalizedRange) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 20;
    const double h = entropy(random_sets(gen, n), normalized());
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log(static_cast<double>(n)) + 1e-12);
  }
}

TEST(JointEntropy, UnionOfIdenticalPairs) {
  const auto s = ngram_set("abc", 1, 3);
  const std::vector<LingSet> col{s};
  EXPECT_NEAR(joint_entropy(col, col, normalized()), 0.0, 1e-15);

  std::mt19937_64 gen(14);
  const auto a = random_sets(gen, 10), b = random_sets(gen, 10);
  const auto joined = join_columns(a, b, JoinMode::Union);
  EXPECT_EQ(joint_entropy(a, b, normalized()), entropy(joined, normalized()));
}

TEST(JointEntropy, ConcatJoinsAreSupersets) {
  std::mt19937_64 gen(15);
  const auto a = random_sets(gen, 30), b = random_sets(gen, 30);
  const auto u = join_columns(a, b, JoinMode::Union);
  const auto c = join_columns(a, b, JoinMode::Concat);
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_TRUE(std::includes(c[i].grams().begin(), c[i].grams().end(), u[i].grams().begin(),
                              u[i].grams().end()));
  }
}

TEST(ConditionalEntropy, SelfConditioningAndChainRule) {
  std::mt19937_64 gen(16);
  const auto a = random_sets(gen, 15), b = random_sets(gen, 15);
  EXPECT_NEAR(conditional_entropy(a, a, normalized()), 0.0, 1e-12);
  const double chain = conditional_entropy(a, b, normalized()) + entropy(a, normalized());
  EXPECT_NEAR(chain, joint_entropy(a, b, normalized()), 1e-12);
}

TEST(ConditionalEntropy, CanBeNegativeInLiteralMode) {
  // Search small samples for a negative H(target | cond); the estimator
  // artifact is reported, never clamped.
  std::mt19937_64 gen(17);
  bool found = false;
  for (int trial = 0; trial < 5000 && !found; ++trial) {
    const auto cond = random_sets(gen, 3), target = random_sets(gen, 3);
    const double h = conditional_entropy(cond, target, literal());
    if (h < 0.0) {
      found = true;
      EXPECT_NEAR(h + entropy(cond, literal()), joint_entropy(cond, target, literal()), 1e-12);
    }
  }
  EXPECT_TRUE(found);
}

TEST(MutualInformation, UnionIdentities) {
  std::mt19937_64 gen(18);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 20;
    const auto a = random_sets(gen, n), b = random_sets(gen, n);
    EXPECT_NEAR(mutual_information(a, b, normalized()), mutual_information(b, a, normalized()),
                1e-12);
    EXPECT_NEAR(mutual_information(a, a, normalized()), entropy(a, normalized()), 1e-12);
    EXPECT_NEAR(mutual_information(a, a, literal()), entropy(a, literal()), 1e-12);
  }
}

TEST(MutualInformation, ConcatAsymmetryIsSmall) {
  EstimatorConfig cfg;
  cfg.joint_mode = JoinMode::Concat;
  std::mt19937_64 gen(19);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_sets(gen, 15), b = random_sets(gen, 15);
    worst = std::max(worst, std::abs(mutual_information(a, b, cfg) - mutual_information(b, a, cfg)));
  }
  // Measured, not required to vanish: bounded by the normalized-entropy range.
  EXPECT_LE(worst, std::log(15.0));
  RecordProperty("max_concat_asymmetry", std::to_string(worst));
}

TEST(MutualInformation, RejectsMismatchedColumns) {
  std::mt19937_64 gen(20);
  const auto a = random_sets(gen, 3), b = random_sets(gen, 4);
  EXPECT_EQ(code_of([&] { mutual_information(a, b, EstimatorConfig{}); }), ErrorCode::EmptySample);
  EXPECT_EQ(code_of([&] { mutual_information({}, {}, EstimatorConfig{}); }),
            ErrorCode::EmptySample);
}

TEST(JointMarginalMi, ConstantMarginalReducesToItsOwnEntropy) {
  std::mt19937_64 gen(21);
  const auto x = random_sets(gen, 12), y = random_sets(gen, 12);
  // Z shares no grams with X or Y, so joining it leaves every distance unchanged
  // and H(XYZ) == H(XY). A constant column normalizes to the uniform distribution.
  const std::vector<LingSet> zt(12, tagged("#", 4));
  EXPECT_NEAR(entropy(zt, normalized()), std::log(12.0), 1e-12);
  EXPECT_NEAR(joint_marginal_mi(x, y, zt, JointMarginal::XY_vs_Z, normalized()), std::log(12.0),
              1e-12);
}

TEST(JointMarginalMi, IdenticalTriplesReduceToEntropy) {
  std::mt19937_64 gen(22);
  const auto s = random_sets(gen, 10);
  for (auto which : {JointMarginal::XY_vs_Z, JointMarginal::XZ_vs_Y}) {
    EXPECT_NEAR(joint_marginal_mi(s, s, s, which, normalized()), entropy(s, normalized()), 1e-12);
  }
}

TEST(TripletLikelihood, TelescopesToJointCapacity) {
  std::mt19937_64 gen(23);
  for (auto mode : {JoinMode::Union, JoinMode::Concat}) {
    EstimatorConfig cfg;
    cfg.joint_mode = mode;
    for (int trial = 0; trial < 50; ++trial) {
      StepSample sample;
      const auto xs = random_sets(gen, 8), ys = random_sets(gen, 8), zs = random_sets(gen, 8);
      for (std::size_t i = 0; i < 8; ++i) sample.triplets.push_back({xs[i], ys[i], zs[i], ""});
      const auto& t = sample.triplets[gen() % 8];
      const double direct = joint_capacity(t, sample, cfg);
      EXPECT_LE(std::abs(triplet_likelihood(t, sample, cfg) - direct), 1e-12 * direct);
    }
  }
}

TEST(TripletLikelihood, IdenticalTripletsGiveKernelMax) {
  const auto t = make_triplet("the cat", "sat on", "the mat", GramSpec{});
  StepSample sample;
  sample.triplets.assign(5, t);
  for (auto mode : {JoinMode::Union, JoinMode::Concat}) {
    EstimatorConfig cfg;
    cfg.joint_mode = mode;
    EXPECT_NEAR(triplet_likelihood(t, sample, cfg), kF0, 1e-15);
  }
}

TEST(TripletLikelihood, UnderflowIsReported) {
  // exp(-h^2/50) underflows to zero for h around 270 and beyond.
  EXPECT_GT(kernel_at(190, 5.0), 0.0);
  EXPECT_EQ(kernel_at(300, 5.0), 0.0);
  StepSample sample;
  sample.triplets.push_back({tagged("p", 150), tagged("q", 1), tagged("r", 1), ""});
  const Triplet far{tagged("s", 150), tagged("q", 1), tagged("r", 1), ""};
  EXPECT_EQ(code_of([&] { triplet_likelihood(far, sample, EstimatorConfig{}); }),
            ErrorCode::DegenerateDenominator);
  EXPECT_EQ(code_of([&] { triplet_likelihood(far, StepSample{}, EstimatorConfig{}); }),
            ErrorCode::EmptySample);
}

TEST(MeasureStep, AgreesWithStandaloneEstimators) {
  std::mt19937_64 gen(24);
  StepSample sample;
  sample.step = 7;
  const auto xs = random_sets(gen, 20), ys = random_sets(gen, 20), zs = random_sets(gen, 20);
  for (std::size_t i = 0; i < 20; ++i) sample.triplets.push_back({xs[i], ys[i], zs[i], ""});
  for (auto mode : {JoinMode::Union, JoinMode::Concat}) {
    EstimatorConfig cfg;
    cfg.joint_mode = mode;
    const auto rec = measure_step(sample, cfg);
    EXPECT_EQ(rec.step, 7u);
    EXPECT_EQ(rec.sample_size, 20u);
    EXPECT_DOUBLE_EQ(rec.i_xy, mutual_information(xs, ys, cfg));
    EXPECT_DOUBLE_EQ(rec.i_yz, mutual_information(ys, zs, cfg));
    EXPECT_DOUBLE_EQ(rec.i_xz, mutual_information(xs, zs, cfg));
    EXPECT_DOUBLE_EQ(rec.i_xy_z, joint_marginal_mi(xs, ys, zs, JointMarginal::XY_vs_Z, cfg));
    EXPECT_DOUBLE_EQ(rec.i_xz_y, joint_marginal_mi(xs, ys, zs, JointMarginal::XZ_vs_Y, cfg));
    EXPECT_DOUBLE_EQ(rec.h_x, entropy(xs, cfg));
    EXPECT_EQ(rec.joint_comparisons, 120u);
    EXPECT_LE(rec.joint_exceeds_marginal, rec.joint_comparisons);
  }
}

TEST(EstimatorConfig, Validation) {
  EstimatorConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.bandwidth = 0.0;
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::ConfigInvalid);
  EXPECT_EQ(parse_entropy_mode("paper_literal"), EntropyMode::PaperLiteral);
  EXPECT_EQ(code_of([] { parse_entropy_mode("bits"); }), ErrorCode::ConfigInvalid);
}
