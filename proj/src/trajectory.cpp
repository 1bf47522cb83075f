#include "setinfo/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "setinfo/error.hpp"

namespace setinfo {
namespace fs = std::filesystem;

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

StructuredSource parse_structured_source(std::string_view name) {
  if (name == "gold") return StructuredSource::Gold;
  if (name == "extractor") return StructuredSource::Extractor;
  throw Error(ErrorCode::ConfigInvalid, "structured.source must be gold or extractor");
}

std::string_view to_string(StructuredSource s) {
  return s == StructuredSource::Gold ? "gold" : "extractor";
}

struct Inputs {
  DocumentCollection docs;
  std::vector<Triplet> gold;
  bool synthetic = false;
};

Inputs load_inputs(const RunConfig& cfg) {
  Inputs in;
  if (cfg.corpus_path.empty()) {
    auto grammar = cfg.grammar_path.empty() ? SynthGrammar::builtin()
                                            : SynthGrammar::load(cfg.grammar_path);
    if (cfg.p_pref) grammar.p_pref = *cfg.p_pref;
    Rng rng = derive_rng(cfg.seed, 0x5eed'c0de'0000ULL);
    auto corpus = synth_corpus(cfg.synthetic_sentences, rng, grammar, cfg.grams);
    in.docs = std::move(corpus.documents);
    in.gold = std::move(corpus.gold);
    in.synthetic = true;
  } else {
    in.docs = filter_by_label(load_documents(cfg.corpus_path, cfg.strip_headers),
                              cfg.corpus_labels);
  }
  return in;
}

std::unique_ptr<StepSource> make_source(const std::string& agent, const RunConfig& cfg,
                                        Inputs& in) {
  if (agent == "random") {
    return std::make_unique<RandomSplitSource>(in.docs, cfg.context_length, cfg.grams);
  }
  if (agent == "structured") {
    if (cfg.structured_source == StructuredSource::Extractor) {
      const VerbLexicon lexicon = cfg.lexicon_path.empty() ? VerbLexicon::builtin()
                                                           : VerbLexicon::load(cfg.lexicon_path);
      return std::make_unique<TripletPoolSource>(extract_all(in.docs, lexicon, cfg.grams),
                                                 AgentLabel::Extractor);
    }
    if (!cfg.gold_path.empty()) {
      return std::make_unique<TripletPoolSource>(load_triplets(cfg.gold_path, cfg.grams),
                                                 AgentLabel::GoldFile);
    }
    if (in.synthetic) {
      return std::make_unique<TripletPoolSource>(in.gold, AgentLabel::Synthetic);
    }
    throw Error(ErrorCode::ConfigInvalid,
                "structured agent with gold source needs gold.path for a real corpus");
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown agent \"" + agent + "\"");
}

}  // namespace

std::vector<std::string_view> known_config_keys() {
  return {"corpus.path",         "corpus.strip_headers", "corpus.labels",
          "synthetic.sentences", "synthetic.grammar",    "synthetic.p_pref",
          "agents",              "structured.source",    "gold.path",
          "lexicon.path",        "context.length",       "context.per_step",
          "ngram.n_min",         "ngram.n_max",          "ngram.include_space",
          "estimator.bandwidth", "estimator.entropy_mode", "estimator.joint_mode",
          "run.k_max",           "run.window",           "run.seed",
          "run.workers",         "run.out"};
}

RunConfig RunConfig::from_config(const FlatConfig& cfg) {
  cfg.require_known(known_config_keys());
  RunConfig rc;
  rc.corpus_path = cfg.get_string("corpus.path", "");
  rc.strip_headers = cfg.get_bool("corpus.strip_headers", rc.strip_headers);
  rc.corpus_labels = cfg.get_list("corpus.labels");
  rc.synthetic_sentences = cfg.get_size("synthetic.sentences", rc.synthetic_sentences);
  rc.grammar_path = cfg.get_string("synthetic.grammar", "");
  if (cfg.has("synthetic.p_pref")) rc.p_pref = cfg.get_double("synthetic.p_pref", 0.0);
  if (cfg.has("agents")) rc.agents = cfg.get_list("agents");
  rc.structured_source = parse_structured_source(cfg.get_string("structured.source", "gold"));
  rc.gold_path = cfg.get_string("gold.path", "");
  rc.lexicon_path = cfg.get_string("lexicon.path", "");
  rc.context_length = cfg.get_size("context.length", rc.context_length);
  rc.per_step = cfg.get_size("context.per_step", rc.per_step);
  rc.grams.n_min = cfg.get_size("ngram.n_min", rc.grams.n_min);
  rc.grams.n_max = cfg.get_size("ngram.n_max", rc.grams.n_max);
  rc.grams.include_space = cfg.get_bool("ngram.include_space", rc.grams.include_space);
  rc.estimator.bandwidth = cfg.get_double("estimator.bandwidth", rc.estimator.bandwidth);
  rc.estimator.entropy_mode =
      parse_entropy_mode(cfg.get_string("estimator.entropy_mode", "normalized"));
  rc.estimator.joint_mode = parse_join_mode(cfg.get_string("estimator.joint_mode", "union"));
  rc.k_max = cfg.get_size("run.k_max", rc.k_max);
  rc.window = cfg.get_size("run.window", rc.window);
  rc.seed = cfg.get_u64("run.seed", rc.seed);
  rc.workers = cfg.get_size("run.workers", rc.workers);
  rc.out_dir = cfg.get_string("run.out", rc.out_dir.string());
  rc.validate();
  return rc;
}

void RunConfig::validate() const {
  const auto invalid = [](const std::string& why) { return Error(ErrorCode::ConfigInvalid, why); };
  if (k_max < 1) throw invalid("run.k_max must be at least 1");
  if (per_step < 1) throw invalid("context.per_step must be at least 1");
  if (window < 1) throw invalid("run.window must be at least 1");
  if (workers < 1) throw invalid("run.workers must be at least 1");
  if (grams.n_min < 1 || grams.n_max < grams.n_min) {
    throw invalid("n-gram range must satisfy 1 <= n_min <= n_max");
  }
  if (agents.empty()) throw invalid("no agents configured");
  for (const auto& a : agents) {
    if (a != "random" && a != "structured") throw invalid("unknown agent \"" + a + "\"");
  }
  if (p_pref && (*p_pref < 0.0 || *p_pref > 1.0)) throw invalid("synthetic.p_pref must be in [0, 1]");
  estimator.validate();
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  std::string labels;
  for (const auto& l : corpus_labels) labels += (labels.empty() ? "" : ",") + l;
  std::string agent_list;
  for (const auto& a : agents) agent_list += (agent_list.empty() ? "" : ",") + a;
  out << "agents = " << agent_list << '\n'
      << "context.length = " << context_length << '\n'
      << "context.per_step = " << per_step << '\n'
      << "corpus.labels = " << labels << '\n'
      << "corpus.path = " << corpus_path.generic_string() << '\n'
      << "corpus.strip_headers = " << bool_str(strip_headers) << '\n'
      << "estimator.bandwidth = " << format_double(estimator.bandwidth) << '\n'
      << "estimator.entropy_mode = " << to_string(estimator.entropy_mode) << '\n'
      << "estimator.joint_mode = " << to_string(estimator.joint_mode) << '\n'
      << "gold.path = " << gold_path.generic_string() << '\n'
      << "lexicon.path = " << lexicon_path.generic_string() << '\n'
      << "ngram.include_space = " << bool_str(grams.include_space) << '\n'
      << "ngram.n_max = " << grams.n_max << '\n'
      << "ngram.n_min = " << grams.n_min << '\n'
      << "run.k_max = " << k_max << '\n'
      << "run.seed = " << seed << '\n'
      << "run.window = " << window << '\n'
      << "structured.source = " << to_string(structured_source) << '\n'
      << "synthetic.grammar = " << grammar_path.generic_string() << '\n'
      << "synthetic.p_pref = " << (p_pref ? format_double(*p_pref) : std::string{}) << '\n'
      << "synthetic.sentences = " << synthetic_sentences << '\n';
  return out.str();
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(canonical()));
  return buf;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& series_names() {
  static const std::vector<std::string> names = {
      "i_xy", "i_yz", "i_xz", "i_xy_z", "i_xz_y", "h_x", "h_y", "h_z",
      "reward_margin", "reward_xy_dominance"};
  return names;
}

std::vector<double> series_values(const TrajectoryResult& result, std::string_view name) {
  std::vector<double> out;
  out.reserve(result.records.size());
  if (name == "reward_margin" || name == "reward_xy_dominance") {
    const auto& rewards = name == "reward_margin" ? result.margin_rewards : result.xy_rewards;
    for (const auto& r : rewards) out.push_back(r.value);
    return out;
  }
  double MiRecord::*field = nullptr;
  if (name == "i_xy") field = &MiRecord::i_xy;
  else if (name == "i_yz") field = &MiRecord::i_yz;
  else if (name == "i_xz") field = &MiRecord::i_xz;
  else if (name == "i_xy_z") field = &MiRecord::i_xy_z;
  else if (name == "i_xz_y") field = &MiRecord::i_xz_y;
  else if (name == "h_x") field = &MiRecord::h_x;
  else if (name == "h_y") field = &MiRecord::h_y;
  else if (name == "h_z") field = &MiRecord::h_z;
  else throw Error(ErrorCode::ConfigInvalid, "unknown series \"" + std::string(name) + "\"");
  for (const auto& rec : result.records) out.push_back(rec.*field);
  return out;
}

std::vector<double> rolling_mean(const std::vector<double>& series, std::size_t window) {
  if (window == 0) throw Error(ErrorCode::ConfigInvalid, "rolling window must be at least 1");
  if (series.empty()) return {};
  if (window > series.size()) {
    std::cerr << "warning: rolling window " << window << " exceeds series length "
              << series.size() << "; clamping\n";
    window = series.size();
  }
  std::vector<double> out;
  out.reserve(series.size() - window + 1);
  // Each window is summed afresh in index order; a running sum would let
  // rounding error drift along the series.
  for (std::size_t i = 0; i + window <= series.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = i; j < i + window; ++j) sum += series[j];
    out.push_back(sum / static_cast<double>(window));
  }
  return out;
}

void compute_rolling(TrajectoryResult& result, std::size_t window) {
  result.rolling.clear();
  if (!result.records.empty()) window = std::min(window, result.records.size());
  result.meta.window = window;
  for (const auto& name : series_names()) {
    result.rolling[name] = rolling_mean(series_values(result, name), window);
  }
}

void append_step(TrajectoryResult& result, const MiRecord& rec) {
  result.records.push_back(rec);
  result.margin_rewards.push_back(reward(rec, RewardScheme::Margin));
  result.xy_rewards.push_back(reward(rec, RewardScheme::XyDominance));
}

TrajectoryResult run_agent(const StepSource& source, std::string agent, const RunConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  std::vector<MiRecord> records(cfg.k_max);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::size_t i = next++; i < cfg.k_max; i = next++) {
      try {
        const auto sample = source.sample_step(i + 1, cfg.per_step, cfg.seed);
        records[i] = measure_step(sample, cfg.estimator);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.k_max;
      }
    }
  };
  const std::size_t workers = std::min(cfg.workers, cfg.k_max);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  TrajectoryResult result;
  result.agent = std::move(agent);
  std::size_t exceeded = 0;
  std::size_t compared = 0;
  for (const auto& rec : records) {
    append_step(result, rec);
    exceeded += rec.joint_exceeds_marginal;
    compared += rec.joint_comparisons;
  }
  if (cfg.window > cfg.k_max) {
    std::cerr << "warning: run.window " << cfg.window << " exceeds run.k_max " << cfg.k_max
              << "; clamping\n";
  }
  compute_rolling(result, std::min(cfg.window, cfg.k_max));
  result.meta.seed = cfg.seed;
  result.meta.config_hash = cfg.hash();
  result.meta.canonical_config = cfg.canonical();
  result.meta.joint_exceeds_marginal_fraction =
      compared == 0 ? 0.0 : static_cast<double>(exceeded) / static_cast<double>(compared);
  result.meta.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

std::vector<TrajectoryResult> run_simulation(const RunConfig& cfg) {
  cfg.validate();
  Inputs inputs = load_inputs(cfg);
  std::vector<TrajectoryResult> out;
  for (const auto& agent : cfg.agents) {
    const auto source = make_source(agent, cfg, inputs);
    out.push_back(run_agent(*source, agent, cfg));
  }
  return out;
}

// ---------------------------------------------------------------------------

const char* const kCsvHeader =
    "k,i_xy,i_yz,i_xz,i_xy_z,i_xz_y,h_x,h_y,h_z,reward_margin,reward_xy_dominance,demarcken_ok";

void write_csv(const TrajectoryResult& result, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  const auto& m = result.meta;
  out << "# agent = " << result.agent << '\n'
      << "# seed = " << m.seed << '\n'
      << "# config_hash = " << m.config_hash << '\n'
      << "# window = " << m.window << '\n'
      << "# joint_exceeds_marginal_fraction = "
      << format_double(m.joint_exceeds_marginal_fraction) << '\n';
  std::istringstream canon(m.canonical_config);
  for (std::string line; std::getline(canon, line);) out << "# config " << line << '\n';
  out << kCsvHeader << '\n';
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const auto& r = result.records[i];
    out << r.step << ',' << format_double(r.i_xy) << ',' << format_double(r.i_yz) << ','
        << format_double(r.i_xz) << ',' << format_double(r.i_xy_z) << ','
        << format_double(r.i_xz_y) << ',' << format_double(r.h_x) << ','
        << format_double(r.h_y) << ',' << format_double(r.h_z) << ','
        << format_double(result.margin_rewards[i].value) << ','
        << format_double(result.xy_rewards[i].value) << ','
        << (demarcken_check(r).satisfied ? 1 : 0) << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

TrajectoryResult read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  TrajectoryResult result;
  result.agent = path.stem().string();
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  const auto fail = [&](const std::string& why) {
    return Error(ErrorCode::MalformedLine, path.string() + ":" + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = trim(std::string_view(line).substr(1, eq - 1));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (key == "agent") result.agent = value;
      else if (key == "seed") result.meta.seed = std::stoull(value);
      else if (key == "config_hash") result.meta.config_hash = value;
      else if (key == "window") result.meta.window = std::stoul(value);
      else if (key == "joint_exceeds_marginal_fraction")
        result.meta.joint_exceeds_marginal_fraction = std::stod(value);
      else if (key.rfind("config ", 0) == 0)
        result.meta.canonical_config += key.substr(7) + " = " + value + "\n";
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) throw fail("unexpected header");
      header_seen = true;
      continue;
    }
    const auto cells = split_list(line, ',');
    if (cells.size() != 12) throw fail("expected 12 columns");
    try {
      MiRecord r;
      r.step = std::stoul(cells[0]);
      r.i_xy = std::stod(cells[1]);
      r.i_yz = std::stod(cells[2]);
      r.i_xz = std::stod(cells[3]);
      r.i_xy_z = std::stod(cells[4]);
      r.i_xz_y = std::stod(cells[5]);
      r.h_x = std::stod(cells[6]);
      r.h_y = std::stod(cells[7]);
      r.h_z = std::stod(cells[8]);
      append_step(result, r);
    } catch (const std::logic_error&) {
      throw fail("non-numeric cell");
    }
  }
  if (!header_seen) throw Error(ErrorCode::MalformedLine, path.string() + ": no CSV header");
  return result;
}

// ---------------------------------------------------------------------------

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

void write_svg(const std::vector<TrajectoryResult>& results,
               const std::vector<std::string>& series, const fs::path& path,
               std::string_view title) {
  if (results.empty() || series.empty()) {
    throw Error(ErrorCode::EmptySelection, "nothing to plot");
  }
  struct Line {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
  };
  std::vector<Line> lines;
  for (const auto& r : results) {
    for (const auto& name : series) {
      auto it = r.rolling.find(name);
      if (it == r.rolling.end()) {
        throw Error(ErrorCode::ConfigInvalid, "no rolling series \"" + name + "\" for " + r.agent);
      }
      Line line{r.agent + ": " + name, {}, {}};
      // A rolling value is placed at the last step of its window.
      const std::size_t window = std::max<std::size_t>(r.meta.window, 1);
      for (std::size_t i = 0; i < it->second.size(); ++i) {
        line.xs.push_back(static_cast<double>(i + window));
        line.ys.push_back(it->second[i]);
      }
      lines.push_back(std::move(line));
    }
  }

  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const auto& l : lines) {
    for (double x : l.xs) x_lo = std::min(x_lo, x), x_hi = std::max(x_hi, x);
    for (double y : l.ys) y_lo = std::min(y_lo, y), y_hi = std::max(y_hi, y);
  }
  if (x_lo > x_hi) x_lo = 0, x_hi = 1;
  if (y_lo > y_hi) y_lo = 0, y_hi = 1;
  if (x_hi - x_lo < 1e-12) x_lo -= 1, x_hi += 1;
  if (y_hi - y_lo < 1e-12) y_lo -= 0.5, y_hi += 0.5;
  const double y_pad = 0.05 * (y_hi - y_lo);
  y_lo -= y_pad;
  y_hi += y_pad;

  constexpr double W = 800, H = 480, L = 70, R = 220, T = 40, B = 55;
  const double pw = W - L - R, ph = H - T - B;
  const auto px = [&](double x) { return L + (x - x_lo) / (x_hi - x_lo) * pw; };
  const auto py = [&](double y) { return T + (1.0 - (y - y_lo) / (y_hi - y_lo)) * ph; };
  static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                        "#9467bd", "#8c564b", "#e377c2", "#17becf"};

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    out << "<text x=\"" << L + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << xml_escape(title) << "</text>\n";
  }
  out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x_lo + (x_hi - x_lo) * t / 4.0;
    const double yv = y_lo + (y_hi - y_lo) * t / 4.0;
    out << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << T + ph + 18
        << "\" text-anchor=\"middle\">" << fmt(xv, "%.0f") << "</text>\n";
    out << "<text x=\"" << L - 6 << "\" y=\"" << fmt(py(yv) + 4)
        << "\" text-anchor=\"end\">" << fmt(yv, "%.3g") << "</text>\n";
    out << "<line x1=\"" << L << "\" x2=\"" << L + pw << "\" y1=\"" << fmt(py(yv)) << "\" y2=\""
        << fmt(py(yv)) << "\" stroke=\"#dddddd\"/>\n";
  }
  out << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\">step k</text>\n"
      << "<text x=\"18\" y=\"" << T + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << T + ph / 2 << ")\">MI (nats)</text>\n";

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const char* color = palette[i % (sizeof palette / sizeof *palette)];
    if (l.xs.size() == 1) {
      out << "<circle cx=\"" << fmt(px(l.xs[0])) << "\" cy=\"" << fmt(py(l.ys[0]))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    } else if (!l.xs.empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t j = 0; j < l.xs.size(); ++j) {
        out << (j ? " " : "") << fmt(px(l.xs[j])) << ',' << fmt(py(l.ys[j]));
      }
      out << "\"/>\n";
    }
    const double ly = T + 10 + 18.0 * static_cast<double>(i);
    out << "<line x1=\"" << L + pw + 12 << "\" x2=\"" << L + pw + 36 << "\" y1=\"" << ly
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << L + pw + 42 << "\" y=\"" << ly + 4 << "\">" << xml_escape(l.label)
        << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace setinfo
