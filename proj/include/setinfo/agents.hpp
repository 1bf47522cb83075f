#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "setinfo/context_sampler.hpp"
#include "setinfo/corpus.hpp"
#include "setinfo/ngramset.hpp"
#include "setinfo/rng.hpp"
#include "setinfo/triplet.hpp"

namespace setinfo {

// ---------------------------------------------------------------------------
// Random splitter

struct SplitPoints {
  std::size_t first;   // X = tokens[0, first)
  std::size_t second;  // Y = tokens[first, second), Z = tokens[second, L)
};

// Number of (i, j) pairs with 1 <= i < j <= length - 1.
std::size_t split_pair_count(std::size_t length);

// Draws one pair uniformly among split_pair_count(length) choices.
SplitPoints random_split_points(std::size_t length, Rng& rng);

// Cuts a context into three non-empty segments. Throws ContextTooShort for
// fewer than three tokens.
Triplet random_split_agent(const Context& ctx, Rng& rng, const GramSpec& spec);

// ---------------------------------------------------------------------------
// Lexicon-run extractor

class VerbLexicon {
 public:
  VerbLexicon() = default;
  explicit VerbLexicon(std::vector<std::string> words);

  static VerbLexicon load(const std::filesystem::path& path);
  static const VerbLexicon& builtin();  // the shipped data/verbs.txt

  // Matches after trimming leading/trailing ASCII punctuation.
  bool contains(std::string_view token) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Y is the first maximal run of lexicon tokens, X what precedes it and Z what
// follows. Nothing is returned when there is no such run or X or Z would be
// empty.
std::optional<Triplet> heuristic_extract(std::string_view sentence, const VerbLexicon& lexicon,
                                         const GramSpec& spec);

// Every triple the extractor finds across all sentences of a collection.
std::vector<Triplet> extract_all(const DocumentCollection& docs, const VerbLexicon& lexicon,
                                 const GramSpec& spec);

// ---------------------------------------------------------------------------
// Gold triples (JSONL with "x", "y", "z" string fields)

std::vector<Triplet> load_triplets(const std::filesystem::path& path, const GramSpec& spec);
void write_triplets(const std::vector<Triplet>& triplets, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Synthetic subject-verb-object corpus

struct SynthGrammar {
  std::vector<std::string> subjects;
  std::vector<std::string> verbs;
  std::vector<std::string> objects;
  double p_pref = 0.8;  // chance the object comes from the verb's preferred block
  std::size_t objects_per_verb = 4;
  double p_subject_pref = 0.8;  // same for subjects
  std::size_t subjects_per_verb = 2;
  std::size_t sentences_per_document = 20;

  static SynthGrammar builtin();  // data/synthetic_grammar.cfg
  static SynthGrammar parse(std::string_view text, std::string_view origin = "<grammar>");
  static SynthGrammar load(const std::filesystem::path& path);

  void validate() const;
  std::vector<std::size_t> preferred_objects(std::size_t verb) const;
  std::vector<std::size_t> preferred_subjects(std::size_t verb) const;
};

struct SynthCorpus {
  DocumentCollection documents;
  std::vector<Triplet> gold;  // one per sentence, in corpus order
};

SynthCorpus synth_corpus(std::size_t n_sentences, Rng& rng, const SynthGrammar& grammar,
                         const GramSpec& spec);

// ---------------------------------------------------------------------------
// Step construction

// Produces the action set for one step. Implementations are immutable and
// derive all randomness from (seed, step), so steps can be built in any order
// or concurrently.
class StepSource {
 public:
  virtual ~StepSource() = default;
  virtual AgentLabel label() const = 0;
  virtual StepSample sample_step(std::size_t step, std::size_t per_step,
                                 std::uint64_t seed) const = 0;
};

class RandomSplitSource final : public StepSource {
 public:
  // Copies the collection; throws CorpusTooSmall / ContextTooShort up front.
  RandomSplitSource(DocumentCollection docs, std::size_t context_length, GramSpec spec);

  AgentLabel label() const override { return AgentLabel::Random; }
  StepSample sample_step(std::size_t step, std::size_t per_step,
                         std::uint64_t seed) const override;

 private:
  std::unique_ptr<const DocumentCollection> docs_;
  ContextSampler sampler_;
  GramSpec spec_;
};

// Draws triplets uniformly with replacement from a fixed pool.
class TripletPoolSource final : public StepSource {
 public:
  TripletPoolSource(std::vector<Triplet> pool, AgentLabel label);

  AgentLabel label() const override { return label_; }
  StepSample sample_step(std::size_t step, std::size_t per_step,
                         std::uint64_t seed) const override;
  std::size_t pool_size() const { return pool_.size(); }

 private:
  std::vector<Triplet> pool_;
  AgentLabel label_;
};

// Steps are numbered 1..k_max.
std::vector<StepSample> build_step_samples(const StepSource& source, std::size_t k_max,
                                           std::size_t per_step, std::uint64_t seed);

}  // namespace setinfo
