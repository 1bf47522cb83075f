#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "setinfo/rng.hpp"

namespace setinfo {

struct Document {
  std::string id;
  std::string text;  // normalized, non-empty
  std::string source_label;
};

struct DocumentCollection {
  std::vector<Document> documents;

  std::size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }
};

// A fixed-length window of words taken from one document.
struct Context {
  std::vector<std::string> tokens;
  std::string document_id;
  std::size_t offset = 0;  // token offset into the origin document
};

// Lowercases ASCII letters and collapses whitespace runs to one space. With
// strip_headers, every line before the first blank line is dropped first.
std::string normalize_text(std::string_view raw, bool strip_headers = false);

std::vector<std::string> tokenize_words(std::string_view text);

// Splits after '.', '!' or '?' when followed by a space or the end of text.
std::vector<std::string> split_sentences(std::string_view text);

// Draws n contexts of `length` tokens: a document uniformly among those long
// enough, then an offset uniformly among its valid windows. Sampling is with
// replacement and the result order is shuffled.
std::vector<Context> sample_contexts(const DocumentCollection& docs, std::size_t length,
                                     std::size_t n, Rng& rng);

// Accepts a directory of .txt files (subdirectory name = source label) or a
// JSONL manifest with {"id","text","source_label"} per line. Documents that
// normalize to empty text are skipped.
DocumentCollection load_documents(const std::filesystem::path& path, bool strip_headers = false);

// Keeps only documents whose label is in `labels`; an empty list keeps all.
DocumentCollection filter_by_label(const DocumentCollection& docs,
                                   const std::vector<std::string>& labels);

void write_manifest(const DocumentCollection& docs, const std::filesystem::path& path);

}  // namespace setinfo
