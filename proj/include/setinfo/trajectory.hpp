#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "setinfo/agents.hpp"
#include "setinfo/config.hpp"
#include "setinfo/density.hpp"
#include "setinfo/reward.hpp"

namespace setinfo {

enum class StructuredSource { Gold, Extractor };

struct RunConfig {
  // Corpus: a directory or manifest, or the synthetic grammar when empty.
  std::filesystem::path corpus_path;
  bool strip_headers = false;
  std::vector<std::string> corpus_labels;
  std::size_t synthetic_sentences = 12000;
  std::filesystem::path grammar_path;  // empty: built-in grammar
  std::optional<double> p_pref;        // overrides the grammar's value

  std::vector<std::string> agents = {"random", "structured"};
  StructuredSource structured_source = StructuredSource::Gold;
  std::filesystem::path gold_path;     // gold source on a real corpus
  std::filesystem::path lexicon_path;  // empty: built-in lexicon

  std::size_t k_max = 120;
  std::size_t per_step = 100;
  std::size_t context_length = 10;
  GramSpec grams;
  EstimatorConfig estimator;
  std::size_t window = 50;
  std::uint64_t seed = 42;
  std::size_t workers = 1;
  std::filesystem::path out_dir = "out";

  // Reads the flat config keys; unknown keys are rejected.
  static RunConfig from_config(const FlatConfig& cfg);

  // Throws ConfigInvalid; a window larger than k_max is clamped by the run.
  void validate() const;

  // Every setting that affects results, one `key = value` per line. Worker
  // count and output directory are excluded.
  std::string canonical() const;
  std::string hash() const;  // FNV-1a of canonical(), hex
};

std::vector<std::string_view> known_config_keys();

struct RunMetadata {
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string canonical_config;
  std::size_t window = 0;  // after clamping
  double wall_seconds = 0.0;
  // Share of (member, pair, marginal) comparisons with P(W,W') > P(W).
  double joint_exceeds_marginal_fraction = 0.0;
};

struct TrajectoryResult {
  std::string agent;  // "random" or "structured"
  std::vector<MiRecord> records;
  std::vector<RewardSignal> margin_rewards;
  std::vector<RewardSignal> xy_rewards;
  std::map<std::string, std::vector<double>, std::less<>> rolling;
  RunMetadata meta;
};

// Names usable with series_values / rolling / plotting.
const std::vector<std::string>& series_names();
std::vector<double> series_values(const TrajectoryResult& result, std::string_view name);

// output[i] = mean(series[i, i + window)). A window longer than the series is
// clamped to its length with a warning on stderr.
std::vector<double> rolling_mean(const std::vector<double>& series, std::size_t window);

void compute_rolling(TrajectoryResult& result, std::size_t window);

// MI record and rewards for one step.
void append_step(TrajectoryResult& result, const MiRecord& rec);

// Runs every configured agent; results come back in config order.
std::vector<TrajectoryResult> run_simulation(const RunConfig& cfg);

// One agent over pre-built step sources; exposed for tests.
TrajectoryResult run_agent(const StepSource& source, std::string agent, const RunConfig& cfg);

extern const char* const kCsvHeader;

void write_csv(const TrajectoryResult& result, const std::filesystem::path& path);
TrajectoryResult read_csv(const std::filesystem::path& path);

// Rolling-mean polylines for each (result, series) pair.
void write_svg(const std::vector<TrajectoryResult>& results,
               const std::vector<std::string>& series, const std::filesystem::path& path,
               std::string_view title = "");

}  // namespace setinfo
