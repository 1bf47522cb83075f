#include "setinfo/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "setinfo/context_sampler.hpp"
#include "setinfo/error.hpp"

namespace setinfo {
namespace fs = std::filesystem;

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), is_space);
}

std::string_view drop_headers(std::string_view raw) {
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t end = raw.find('\n', pos);
    if (end == std::string_view::npos) end = raw.size();
    if (is_blank(raw.substr(pos, end - pos))) {
      return end >= raw.size() ? std::string_view{} : raw.substr(end + 1);
    }
    pos = end + 1;
  }
  // No blank line: nothing looks like a header block.
  return raw;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DocumentCollection load_directory(const fs::path& root, bool strip_headers) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (fs::recursive_directory_iterator it(root, ec), end; it != end; it.increment(ec)) {
    if (ec) break;
    if (it->is_regular_file() && it->path().extension() == ".txt") files.push_back(it->path());
  }
  if (ec) throw Error(ErrorCode::IoError, "cannot walk " + root.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());

  DocumentCollection docs;
  for (const auto& file : files) {
    std::string text = normalize_text(read_file(file), strip_headers);
    if (text.empty()) continue;
    const fs::path rel = fs::relative(file, root);
    const fs::path parent = rel.parent_path();
    std::string label = parent.empty() ? std::string{} : parent.begin()->string();
    docs.documents.push_back({rel.generic_string(), std::move(text), std::move(label)});
  }
  return docs;
}

DocumentCollection load_manifest(const fs::path& path, bool strip_headers) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());

  DocumentCollection docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto fail = [&](const std::string& why) {
      return Error(ErrorCode::MalformedManifest,
                   path.string() + ":" + std::to_string(line_no) + ": " + why);
    };
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw fail(e.what());
    }
    if (!obj.is_object()) throw fail("expected a JSON object");
    if (!obj.contains("id") || !obj["id"].is_string()) throw fail("missing string field \"id\"");
    if (!obj.contains("text") || !obj["text"].is_string())
      throw fail("missing string field \"text\"");
    std::string label;
    if (obj.contains("source_label")) {
      if (!obj["source_label"].is_string()) throw fail("\"source_label\" must be a string");
      label = obj["source_label"].get<std::string>();
    }
    std::string id = obj["id"].get<std::string>();
    if (!seen.insert(id).second) throw fail("duplicate id \"" + id + "\"");
    std::string text = normalize_text(obj["text"].get<std::string>(), strip_headers);
    if (text.empty()) continue;
    docs.documents.push_back({std::move(id), std::move(text), std::move(label)});
  }
  return docs;
}

}  // namespace

std::string normalize_text(std::string_view raw, bool strip_headers) {
  if (strip_headers) raw = drop_headers(raw);
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    if (end > pos) tokens.emplace_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return tokens;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  const auto emit = [&](std::size_t end) {
    std::string_view s = text.substr(start, end - start);
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty()) sentences.emplace_back(s);
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if ((c == '.' || c == '!' || c == '?') && (i + 1 == text.size() || text[i + 1] == ' ')) {
      emit(i + 1);
      start = i + 1;
    }
  }
  if (start < text.size()) emit(text.size());
  return sentences;
}

std::vector<Context> sample_contexts(const DocumentCollection& docs, std::size_t length,
                                     std::size_t n, Rng& rng) {
  return ContextSampler(docs, length).sample(n, rng);
}

DocumentCollection load_documents(const fs::path& path, bool strip_headers) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw Error(ErrorCode::IoError, "no such path: " + path.string());
  if (fs::is_directory(path, ec)) return load_directory(path, strip_headers);
  return load_manifest(path, strip_headers);
}

DocumentCollection filter_by_label(const DocumentCollection& docs,
                                   const std::vector<std::string>& labels) {
  if (labels.empty()) return docs;
  DocumentCollection out;
  for (const auto& doc : docs.documents) {
    if (std::find(labels.begin(), labels.end(), doc.source_label) != labels.end())
      out.documents.push_back(doc);
  }
  return out;
}

void write_manifest(const DocumentCollection& docs, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  for (const auto& doc : docs.documents) {
    nlohmann::json obj = {{"id", doc.id}, {"text", doc.text}, {"source_label", doc.source_label}};
    out << obj.dump() << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace setinfo
