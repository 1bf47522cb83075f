#include "setinfo/agents.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "embedded_data.hpp"
#include "setinfo/config.hpp"
#include "setinfo/error.hpp"

namespace setinfo {
namespace fs = std::filesystem;

namespace {

std::string join_tokens(const std::vector<std::string>& tokens, std::size_t begin,
                        std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string_view strip_punct(std::string_view token) {
  const auto punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; };
  while (!token.empty() && punct(token.front())) token.remove_prefix(1);
  while (!token.empty() && punct(token.back())) token.remove_suffix(1);
  return token;
}

std::vector<std::size_t> block(std::size_t start, std::size_t count, std::size_t modulus) {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < count; ++m) out.push_back((start + m) % modulus);
  return out;
}

std::uint64_t stream_id(std::size_t step, AgentLabel label) {
  return static_cast<std::uint64_t>(step) * 8 + static_cast<std::uint64_t>(label);
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t split_pair_count(std::size_t length) {
  return length < 3 ? 0 : (length - 1) * (length - 2) / 2;
}

SplitPoints random_split_points(std::size_t length, Rng& rng) {
  if (length < 3) {
    throw Error(ErrorCode::ContextTooShort,
                "need at least 3 tokens to split, got " + std::to_string(length));
  }
  auto m = static_cast<std::size_t>(uniform_index(rng, split_pair_count(length)));
  // Pairs are ordered by i, then j; row i holds the (length - 1 - i) choices of j.
  for (std::size_t i = 1;; ++i) {
    const std::size_t row = length - 1 - i;
    if (m < row) return {i, i + 1 + m};
    m -= row;
  }
}

Triplet random_split_agent(const Context& ctx, Rng& rng, const GramSpec& spec) {
  const std::size_t n = ctx.tokens.size();
  const auto [i, j] = random_split_points(n, rng);
  return make_triplet(join_tokens(ctx.tokens, 0, i), join_tokens(ctx.tokens, i, j),
                      join_tokens(ctx.tokens, j, n), spec,
                      ctx.document_id + "@" + std::to_string(ctx.offset));
}

// ---------------------------------------------------------------------------

VerbLexicon::VerbLexicon(std::vector<std::string> words) {
  for (auto& w : words) {
    std::string t = trim(w);
    if (!t.empty() && t.front() != '#') words_.insert(std::move(t));
  }
}

VerbLexicon VerbLexicon::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open lexicon " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) words.push_back(line);
  return VerbLexicon(std::move(words));
}

const VerbLexicon& VerbLexicon::builtin() {
  static const VerbLexicon lexicon(split_list(embedded::kVerbLexicon, '\n'));
  return lexicon;
}

bool VerbLexicon::contains(std::string_view token) const {
  const auto word = strip_punct(token);
  return !word.empty() && words_.count(std::string(word)) > 0;
}

std::optional<Triplet> heuristic_extract(std::string_view sentence, const VerbLexicon& lexicon,
                                         const GramSpec& spec) {
  const auto tokens = tokenize_words(sentence);
  std::size_t start = 0;
  while (start < tokens.size() && !lexicon.contains(tokens[start])) ++start;
  if (start == 0 || start == tokens.size()) return std::nullopt;
  std::size_t end = start;
  while (end < tokens.size() && lexicon.contains(tokens[end])) ++end;
  if (end == tokens.size()) return std::nullopt;
  return make_triplet(join_tokens(tokens, 0, start), join_tokens(tokens, start, end),
                      join_tokens(tokens, end, tokens.size()), spec, std::string(sentence));
}

std::vector<Triplet> extract_all(const DocumentCollection& docs, const VerbLexicon& lexicon,
                                 const GramSpec& spec) {
  std::vector<Triplet> out;
  for (const auto& doc : docs.documents) {
    for (const auto& sentence : split_sentences(doc.text)) {
      if (auto t = heuristic_extract(sentence, lexicon, spec)) {
        t->origin = doc.id + ": " + t->origin;
        out.push_back(std::move(*t));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Triplet> load_triplets(const fs::path& path, const GramSpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<Triplet> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fail = [&](const std::string& why) {
      return Error(ErrorCode::MalformedLine,
                   path.string() + ":" + std::to_string(line_no) + ": " + why);
    };
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw fail(e.what());
    }
    if (!obj.is_object()) throw fail("expected a JSON object");
    std::string parts[3];
    const char* names[3] = {"x", "y", "z"};
    for (int i = 0; i < 3; ++i) {
      if (!obj.contains(names[i]) || !obj[names[i]].is_string()) {
        throw fail(std::string("missing string field \"") + names[i] + "\"");
      }
      parts[i] = normalize_text(obj[names[i]].get<std::string>());
      if (parts[i].empty()) throw fail(std::string("field \"") + names[i] + "\" is empty");
    }
    out.push_back(make_triplet(parts[0], parts[1], parts[2], spec,
                               path.filename().string() + ":" + std::to_string(line_no)));
  }
  return out;
}

void write_triplets(const std::vector<Triplet>& triplets, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  for (const auto& t : triplets) {
    out << nlohmann::json{{"x", t.x_text()}, {"y", t.y_text()}, {"z", t.z_text()}}.dump() << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

// ---------------------------------------------------------------------------

SynthGrammar SynthGrammar::builtin() { return parse(embedded::kSyntheticGrammar, "<builtin>"); }

SynthGrammar SynthGrammar::parse(std::string_view text, std::string_view origin) {
  const auto cfg = FlatConfig::parse(text, origin);
  cfg.require_known({"subjects", "verbs", "objects", "p_pref", "objects_per_verb",
                     "p_subject_pref", "subjects_per_verb", "sentences_per_document"});
  SynthGrammar g;
  g.subjects = cfg.get_list("subjects", '|');
  g.verbs = cfg.get_list("verbs", '|');
  g.objects = cfg.get_list("objects", '|');
  g.p_pref = cfg.get_double("p_pref", g.p_pref);
  g.objects_per_verb = cfg.get_size("objects_per_verb", g.objects_per_verb);
  g.p_subject_pref = cfg.get_double("p_subject_pref", g.p_subject_pref);
  g.subjects_per_verb = cfg.get_size("subjects_per_verb", g.subjects_per_verb);
  g.sentences_per_document = cfg.get_size("sentences_per_document", g.sentences_per_document);
  g.validate();
  return g;
}

SynthGrammar SynthGrammar::load(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open grammar " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

void SynthGrammar::validate() const {
  if (subjects.empty() || verbs.empty() || objects.empty()) {
    throw Error(ErrorCode::ConfigInvalid, "grammar needs non-empty subject, verb and object pools");
  }
  const auto unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!unit(p_pref) || !unit(p_subject_pref)) {
    throw Error(ErrorCode::ConfigInvalid, "preference probabilities must lie in [0, 1]");
  }
  if (objects_per_verb == 0 || objects_per_verb > objects.size() || subjects_per_verb == 0 ||
      subjects_per_verb > subjects.size()) {
    throw Error(ErrorCode::ConfigInvalid, "preferred block sizes must be within the pool sizes");
  }
  if (sentences_per_document == 0) {
    throw Error(ErrorCode::ConfigInvalid, "sentences_per_document must be positive");
  }
}

std::vector<std::size_t> SynthGrammar::preferred_objects(std::size_t verb) const {
  return block(verb * objects_per_verb, objects_per_verb, objects.size());
}

std::vector<std::size_t> SynthGrammar::preferred_subjects(std::size_t verb) const {
  return block(verb * subjects_per_verb, subjects_per_verb, subjects.size());
}

SynthCorpus synth_corpus(std::size_t n_sentences, Rng& rng, const SynthGrammar& grammar,
                         const GramSpec& spec) {
  grammar.validate();
  const auto pick = [&](const std::vector<std::string>& pool, const std::vector<std::size_t>& pref,
                        double p) -> const std::string& {
    if (bernoulli(rng, p)) return pool[pref[uniform_index(rng, pref.size())]];
    return pool[uniform_index(rng, pool.size())];
  };

  SynthCorpus out;
  std::string text;
  std::size_t in_doc = 0;
  const auto flush = [&] {
    if (text.empty()) return;
    out.documents.documents.push_back(
        {"synthetic/" + std::to_string(out.documents.size()), std::move(text), "synthetic"});
    text.clear();
    in_doc = 0;
  };

  for (std::size_t s = 0; s < n_sentences; ++s) {
    const auto verb = static_cast<std::size_t>(uniform_index(rng, grammar.verbs.size()));
    const std::string& subject =
        pick(grammar.subjects, grammar.preferred_subjects(verb), grammar.p_subject_pref);
    const std::string& object =
        pick(grammar.objects, grammar.preferred_objects(verb), grammar.p_pref);
    const std::string x = normalize_text(subject);
    const std::string y = normalize_text(grammar.verbs[verb]);
    const std::string z = normalize_text(object) + ".";

    const std::string doc_id = "synthetic/" + std::to_string(out.documents.size());
    out.gold.push_back(make_triplet(x, y, z, spec, doc_id + "#" + std::to_string(in_doc)));
    if (!text.empty()) text.push_back(' ');
    text += x + " " + y + " " + z;
    if (++in_doc == grammar.sentences_per_document) flush();
  }
  flush();
  return out;
}

// ---------------------------------------------------------------------------

RandomSplitSource::RandomSplitSource(DocumentCollection docs, std::size_t context_length,
                                     GramSpec spec)
    : docs_(std::make_unique<const DocumentCollection>(std::move(docs))),
      sampler_(*docs_, context_length),
      spec_(spec) {
  if (context_length < 3) {
    throw Error(ErrorCode::ContextTooShort, "random splitter needs contexts of at least 3 tokens");
  }
}

StepSample RandomSplitSource::sample_step(std::size_t step, std::size_t per_step,
                                          std::uint64_t seed) const {
  Rng rng = derive_rng(seed, stream_id(step, label()));
  StepSample out{step, {}, label()};
  out.triplets.reserve(per_step);
  for (const auto& ctx : sampler_.sample(per_step, rng)) {
    out.triplets.push_back(random_split_agent(ctx, rng, spec_));
  }
  return out;
}

TripletPoolSource::TripletPoolSource(std::vector<Triplet> pool, AgentLabel label)
    : pool_(std::move(pool)), label_(label) {
  if (pool_.empty()) {
    throw Error(ErrorCode::SourceExhausted,
                std::string("no triplets available for agent ") + std::string(to_string(label)));
  }
}

StepSample TripletPoolSource::sample_step(std::size_t step, std::size_t per_step,
                                          std::uint64_t seed) const {
  Rng rng = derive_rng(seed, stream_id(step, label_));
  StepSample out{step, {}, label_};
  out.triplets.reserve(per_step);
  for (std::size_t i = 0; i < per_step; ++i) {
    out.triplets.push_back(pool_[uniform_index(rng, pool_.size())]);
  }
  return out;
}

std::vector<StepSample> build_step_samples(const StepSource& source, std::size_t k_max,
                                           std::size_t per_step, std::uint64_t seed) {
  std::vector<StepSample> out;
  out.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) out.push_back(source.sample_step(k, per_step, seed));
  return out;
}

}  // namespace setinfo
