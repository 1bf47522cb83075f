// Command-line front end: ingest, gen-synthetic, simulate, plot, check.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "setinfo/agents.hpp"
#include "setinfo/checks.hpp"
#include "setinfo/config.hpp"
#include "setinfo/corpus.hpp"
#include "setinfo/error.hpp"
#include "setinfo/trajectory.hpp"

namespace fs = std::filesystem;
using namespace setinfo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitUsage = 64;

double mean(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

int cmd_ingest(const fs::path& in, const fs::path& out, bool strip_headers,
               const std::vector<std::string>& labels) {
  const auto docs = filter_by_label(load_documents(in, strip_headers), labels);
  if (docs.empty()) {
    std::cerr << "ingest: no non-empty documents found under " << in << '\n';
    return kExitValidation;
  }
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_manifest(docs, out);
  std::cout << "wrote " << docs.size() << " documents to " << out.string() << '\n';
  return kExitOk;
}

int cmd_gen_synthetic(const fs::path& out, std::size_t sentences, std::uint64_t seed,
                      const std::string& grammar_path, double p_pref) {
  auto grammar = grammar_path.empty() ? SynthGrammar::builtin() : SynthGrammar::load(grammar_path);
  if (p_pref >= 0.0) grammar.p_pref = p_pref;
  Rng rng = derive_rng(seed, 0x5eed'c0de'0000ULL);
  const auto corpus = synth_corpus(sentences, rng, grammar, GramSpec{});
  fs::create_directories(out);
  write_manifest(corpus.documents, out / "corpus.jsonl");
  write_triplets(corpus.gold, out / "gold.jsonl");
  std::cout << "wrote " << corpus.documents.size() << " documents and " << corpus.gold.size()
            << " gold triples to " << out.string() << '\n';
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::vector<std::string>& overrides,
                 const std::string& seed_flag, const std::string& out_flag, std::size_t workers) {
  FlatConfig flat = config_path.empty() ? FlatConfig{} : FlatConfig::load(config_path);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ConfigInvalid, "--set expects key=value");
    flat.set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }
  if (const char* env = std::getenv("SETINFO_SEED"); env && *env) flat.set("run.seed", env);
  if (!seed_flag.empty()) flat.set("run.seed", seed_flag);
  if (!out_flag.empty()) flat.set("run.out", out_flag);
  if (workers > 0) flat.set("run.workers", std::to_string(workers));

  const RunConfig cfg = RunConfig::from_config(flat);
  const auto results = run_simulation(cfg);
  fs::create_directories(cfg.out_dir);
  for (const auto& r : results) {
    const fs::path path = cfg.out_dir / (r.agent + ".csv");
    write_csv(r, path);
    std::printf("%-10s i_xy=%.4f i_yz=%.4f i_xz=%.4f i_xy_z=%.4f i_xz_y=%.4f "
                "P(W,W')>P(W) fraction=%.4f  (%.1fs) -> %s\n",
                r.agent.c_str(), mean(series_values(r, "i_xy")), mean(series_values(r, "i_yz")),
                mean(series_values(r, "i_xz")), mean(series_values(r, "i_xy_z")),
                mean(series_values(r, "i_xz_y")), r.meta.joint_exceeds_marginal_fraction,
                r.meta.wall_seconds, path.string().c_str());
  }
  return kExitOk;
}

int cmd_plot(const fs::path& in, const std::vector<std::string>& series, const fs::path& out,
             std::size_t window, const std::string& title) {
  if (series.empty()) throw Error(ErrorCode::EmptySelection, "no series selected");
  std::vector<fs::path> files;
  if (fs::is_directory(in)) {
    for (const auto& e : fs::directory_iterator(in)) {
      if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(in);
  }
  if (files.empty()) throw Error(ErrorCode::EmptySelection, "no CSV files in " + in.string());
  std::vector<TrajectoryResult> results;
  for (const auto& f : files) {
    auto r = read_csv(f);
    compute_rolling(r, window > 0 ? window : (r.meta.window > 0 ? r.meta.window : 50));
    results.push_back(std::move(r));
  }
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_svg(results, series, out, title);
  std::cout << "wrote " << out.string() << '\n';
  return kExitOk;
}

int cmd_check(std::uint64_t seed, std::size_t trials) {
  bool ok = true;
  for (const auto& c : run_invariant_checks(seed, trials)) {
    std::printf("[%s] %s%s%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.passed ? "" : ": ", c.passed ? "" : c.detail.c_str());
    ok = ok && c.passed;
  }
  return ok ? kExitOk : kExitValidation;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigInvalid:
    case ErrorCode::MalformedManifest:
    case ErrorCode::MalformedLine:
    case ErrorCode::EmptySelection:
    case ErrorCode::UnknownScheme:
      return kExitValidation;
    default:
      return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mutual information over character n-gram random sets"};
  app.require_subcommand(1);

  std::string ingest_in, ingest_out;
  bool strip_headers = false;
  std::vector<std::string> labels;
  auto* ingest = app.add_subcommand("ingest", "Normalize a text directory into a JSONL manifest");
  ingest->add_option("--in", ingest_in, "Directory of .txt files or JSONL manifest")->required();
  ingest->add_option("--out", ingest_out, "Manifest to write")->required();
  ingest->add_flag("--strip-headers", strip_headers, "Drop lines before the first blank line");
  ingest->add_option("--labels", labels, "Keep only these source labels")->delimiter(',');

  std::string synth_out, grammar_path;
  std::size_t sentences = 12000;
  std::uint64_t synth_seed = 42;
  double p_pref = -1.0;
  auto* gen = app.add_subcommand("gen-synthetic", "Write a synthetic corpus and its gold triples");
  gen->add_option("--out", synth_out, "Output directory")->required();
  gen->add_option("--sentences", sentences, "Number of sentences")->check(CLI::PositiveNumber);
  gen->add_option("--seed", synth_seed, "Seed");
  gen->add_option("--grammar", grammar_path, "Grammar config file")->check(CLI::ExistingFile);
  gen->add_option("--p-pref", p_pref, "Override the object preference probability")
      ->check(CLI::Range(0.0, 1.0));

  std::string config_path, seed_flag, out_flag;
  std::vector<std::string> overrides;
  std::size_t workers = 0;
  auto* sim = app.add_subcommand("simulate", "Run the agents and write one CSV per agent");
  sim->add_option("--config", config_path, "Run config (key = value)")->check(CLI::ExistingFile);
  sim->add_option("--seed", seed_flag, "Master seed (overrides config and SETINFO_SEED)");
  sim->add_option("--out", out_flag, "Output directory");
  sim->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  sim->add_option("--set", overrides, "Extra config entries, key=value");

  std::string plot_in, plot_out, title;
  std::vector<std::string> series;
  std::size_t window = 0;
  auto* plot = app.add_subcommand("plot", "Render rolling-mean trajectories from CSVs to SVG");
  plot->add_option("--in", plot_in, "CSV file or directory of CSVs")->required();
  plot->add_option("--series", series, "Series to draw, e.g. i_xy,i_yz")->delimiter(',')->required();
  plot->add_option("--out", plot_out, "SVG to write")->required();
  plot->add_option("--window", window, "Rolling window (default: from CSV)");
  plot->add_option("--title", title, "Figure title");

  std::uint64_t check_seed = 7;
  std::size_t trials = 200;
  auto* chk = app.add_subcommand("check", "Run the invariant suite on small random instances");
  chk->add_option("--seed", check_seed, "Seed");
  chk->add_option("--trials", trials, "Trials per check")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(ingest_in, ingest_out, strip_headers, labels);
    if (*gen) return cmd_gen_synthetic(synth_out, sentences, synth_seed, grammar_path, p_pref);
    if (*sim) return cmd_simulate(config_path, overrides, seed_flag, out_flag, workers);
    if (*plot) return cmd_plot(plot_in, series, plot_out, window, title);
    if (*chk) return cmd_check(check_seed, trials);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
