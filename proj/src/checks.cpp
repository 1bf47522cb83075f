#include "setinfo/checks.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "setinfo/density.hpp"
#include "setinfo/ngramset.hpp"
#include "setinfo/reward.hpp"
#include "setinfo/rng.hpp"
#include "setinfo/trajectory.hpp"

namespace setinfo {
namespace {

std::string random_text(Rng& rng, std::size_t max_len) {
  static constexpr char kAlphabet[] = "abcde ";
  const std::size_t len = 1 + uniform_index(rng, max_len);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(kAlphabet[uniform_index(rng, 6)]);
  return s;
}

std::vector<LingSet> random_sets(Rng& rng, std::size_t n) {
  std::vector<LingSet> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(ngram_set(random_text(rng, 12), 1, 3));
  return out;
}

CheckResult check(std::string name, const std::function<std::string()>& body) {
  const std::string failure = body();
  return {std::move(name), failure.empty(), failure.empty() ? "ok" : failure};
}

}  // namespace

std::vector<CheckResult> run_invariant_checks(std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  EstimatorConfig cfg;
  std::vector<CheckResult> out;

  out.push_back(check("hamming metric axioms", [&]() -> std::string {
    for (std::size_t t = 0; t < trials; ++t) {
      const auto s = random_sets(rng, 3);
      const auto ab = hamming(s[0], s[1]), ba = hamming(s[1], s[0]);
      if (ab != ba) return "asymmetric pair";
      if ((ab == 0) != (s[0] == s[1])) return "identity of indiscernibles violated";
      if (hamming(s[0], s[2]) > ab + hamming(s[1], s[2])) return "triangle inequality violated";
    }
    return {};
  }));

  out.push_back(check("kernel bounds", [&]() -> std::string {
    const double top = kernel_max(cfg.bandwidth);
    double prev = top;
    // exp(-h^2 / 2s^2) leaves the double range near h = 38.6 s.
    const auto h_max = static_cast<std::size_t>(38.0 * cfg.bandwidth);
    for (std::size_t h = 0; h < h_max; ++h) {
      const double k = kernel_at(static_cast<double>(h), cfg.bandwidth);
      if (!(k > 0.0 && k <= top)) return "kernel outside (0, max] at h=" + std::to_string(h);
      if (h > 0 && !(k < prev)) return "kernel not decreasing at h=" + std::to_string(h);
      prev = k;
    }
    return {};
  }));

  out.push_back(check("estimator identities (union, normalized)", [&]() -> std::string {
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t n = 1 + uniform_index(rng, 12);
      const auto a = random_sets(rng, n);
      const auto b = random_sets(rng, n);
      if (std::abs(mutual_information(a, b, cfg) - mutual_information(b, a, cfg)) > 1e-12)
        return "MI asymmetric";
      if (std::abs(mutual_information(a, a, cfg) - entropy(a, cfg)) > 1e-12)
        return "I(W,W) != H(W)";
      const double chain = entropy(a, cfg) + conditional_entropy(a, b, cfg);
      if (std::abs(chain - joint_entropy(a, b, cfg)) > 1e-12) return "chain rule violated";
    }
    return {};
  }));

  out.push_back(check("normalized entropy range", [&]() -> std::string {
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t n = 1 + uniform_index(rng, 20);
      const double h = entropy(random_sets(rng, n), cfg);
      if (h < 0.0 || h > std::log(static_cast<double>(n)) + 1e-12)
        return "H outside [0, ln n] for n=" + std::to_string(n);
    }
    return {};
  }));

  out.push_back(check("margin reward agrees with ordering check", [&]() -> std::string {
    for (std::size_t t = 0; t < trials * 5; ++t) {
      MiRecord rec;
      rec.i_xy = uniform_unit(rng);
      rec.i_yz = uniform_unit(rng);
      rec.i_xz = uniform_unit(rng);
      if ((reward(rec, RewardScheme::Margin).value > 0.0) != demarcken_check(rec).satisfied)
        return "margin reward sign disagrees";
    }
    return {};
  }));

  out.push_back(check("rolling mean commutes with affine maps", [&]() -> std::string {
    for (std::size_t t = 0; t < trials / 10 + 1; ++t) {
      std::vector<double> xs(1 + uniform_index(rng, 60));
      for (auto& x : xs) x = uniform_unit(rng) * 4.0 - 2.0;
      const double a = uniform_unit(rng) * 3.0 - 1.5, b = uniform_unit(rng) * 10.0 - 5.0;
      std::vector<double> ys;
      for (double x : xs) ys.push_back(a * x + b);
      const std::size_t w = 1 + uniform_index(rng, xs.size());
      const auto rx = rolling_mean(xs, w), ry = rolling_mean(ys, w);
      for (std::size_t i = 0; i < rx.size(); ++i) {
        if (std::abs(ry[i] - (a * rx[i] + b)) > 1e-12) return "affine mismatch";
      }
    }
    return {};
  }));

  return out;
}

}  // namespace setinfo
