#include <gtest/gtest.h>

#include "setinfo/corpus.hpp"
#include "setinfo/error.hpp"
#include "test_helpers.hpp"

using namespace setinfo;

namespace {

DocumentCollection single_doc(const std::string& text) {
  DocumentCollection docs;
  docs.documents.push_back({"d0", text, "label"});
  return docs;
}

}  // namespace

TEST(NormalizeText, LowercasesAndCollapsesWhitespace) {
  EXPECT_EQ(normalize_text("Hello   WORLD\n"), "hello world");
  EXPECT_EQ(normalize_text(""), "");
  EXPECT_EQ(normalize_text("A\tB  C"), "a b c");
  EXPECT_EQ(normalize_text("  \r\n lead and trail \t"), "lead and trail");
}

TEST(NormalizeText, StripsNewsgroupHeaders) {
  const std::string raw = "From: someone@example.com\nSubject: Test\n\nBody Text here.\nMore.";
  EXPECT_EQ(normalize_text(raw, true), "body text here. more.");
  EXPECT_EQ(normalize_text(raw, false),
            "from: someone@example.com subject: test body text here. more.");
  // Without a blank line nothing is treated as a header.
  EXPECT_EQ(normalize_text("Only\nLines", true), "only lines");
}

TEST(NormalizeText, IsIdempotent) {
  std::mt19937 gen(3);
  const std::string alphabet = "aBc \t\n.!?Z";
  for (int trial = 0; trial < 500; ++trial) {
    std::string raw;
    const int len = static_cast<int>(gen() % 40);
    for (int i = 0; i < len; ++i) raw.push_back(alphabet[gen() % alphabet.size()]);
    const auto once = normalize_text(raw);
    EXPECT_EQ(normalize_text(once), once) << "raw: " << raw;
  }
}

TEST(TokenizeWords, SplitsOnSpaces) {
  EXPECT_EQ(tokenize_words("the cat sat"), (std::vector<std::string>{"the", "cat", "sat"}));
  EXPECT_EQ(tokenize_words("a b."), (std::vector<std::string>{"a", "b."}));
  EXPECT_TRUE(tokenize_words("").empty());
}

TEST(SplitSentences, CutsAfterTerminators) {
  EXPECT_EQ(split_sentences("a b. c d!"), (std::vector<std::string>{"a b.", "c d!"}));
  EXPECT_EQ(split_sentences("no terminator"), (std::vector<std::string>{"no terminator"}));
  EXPECT_EQ(split_sentences("x? y."), (std::vector<std::string>{"x?", "y."}));
  EXPECT_EQ(split_sentences("version 1.5 ships. ok"),
            (std::vector<std::string>{"version 1.5 ships.", "ok"}));
  EXPECT_TRUE(split_sentences("").empty());
}

TEST(SampleContexts, SingleWindowRepeats) {
  const auto docs = single_doc("w0 w1 w2 w3 w4 w5 w6 w7 w8 w9");
  Rng rng(1);
  const auto ctxs = sample_contexts(docs, 10, 3, rng);
  ASSERT_EQ(ctxs.size(), 3u);
  for (const auto& c : ctxs) {
    EXPECT_EQ(c.offset, 0u);
    EXPECT_EQ(c.tokens, tokenize_words(docs.documents[0].text));
  }
}

TEST(SampleContexts, TooSmallCorpus) {
  const auto docs = single_doc("w0 w1 w2 w3 w4 w5 w6 w7 w8");
  Rng rng(1);
  EXPECT_EQ(code_of([&] { sample_contexts(docs, 10, 1, rng); }), ErrorCode::CorpusTooSmall);
  EXPECT_EQ(code_of([&] { sample_contexts(DocumentCollection{}, 10, 1, rng); }),
            ErrorCode::CorpusTooSmall);
}

TEST(SampleContexts, ReproducibleAndMapsToRealSpans) {
  DocumentCollection docs;
  for (int d = 0; d < 5; ++d) {
    std::string text;
    for (int w = 0; w < 8 + d * 7; ++w) text += "d" + std::to_string(d) + "w" + std::to_string(w) + " ";
    docs.documents.push_back({"doc" + std::to_string(d), normalize_text(text), ""});
  }
  Rng a(42), b(42);
  const auto first = sample_contexts(docs, 10, 200, a);
  const auto second = sample_contexts(docs, 10, 200, b);
  ASSERT_EQ(first.size(), 200u);
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].tokens, second[i].tokens);
    EXPECT_EQ(first[i].document_id, second[i].document_id);
    ASSERT_EQ(first[i].tokens.size(), 10u);
    // Document 0 has only 8 tokens and must never be chosen.
    EXPECT_NE(first[i].document_id, "doc0");
    const auto& doc = *std::find_if(docs.documents.begin(), docs.documents.end(),
                                    [&](const Document& d) { return d.id == first[i].document_id; });
    const auto tokens = tokenize_words(doc.text);
    for (std::size_t t = 0; t < 10; ++t) EXPECT_EQ(first[i].tokens[t], tokens[first[i].offset + t]);
  }
}

TEST(LoadDocuments, DirectoryWithLabels) {
  TempDir dir;
  dir.write("sci.space/1.txt", "Rockets  GO up.\n");
  dir.write("rec.autos/2.txt", "Cars go\tvroom.");
  dir.write("rec.autos/ignored.md", "not a text file");
  dir.write("rec.autos/blank.txt", "   \n ");
  const auto docs = load_documents(dir.path());
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs.documents[0].source_label, "rec.autos");
  EXPECT_EQ(docs.documents[0].text, "cars go vroom.");
  EXPECT_EQ(docs.documents[1].source_label, "sci.space");
  EXPECT_EQ(docs.documents[1].text, "rockets go up.");
  EXPECT_EQ(filter_by_label(docs, {"sci.space"}).size(), 1u);
  EXPECT_EQ(filter_by_label(docs, {}).size(), 2u);
}

TEST(LoadDocuments, EmptyDirectoryIsValid) {
  TempDir dir;
  EXPECT_TRUE(load_documents(dir.path()).empty());
}

TEST(LoadDocuments, ManifestRoundTrip) {
  TempDir dir;
  const auto path = dir.write("m.jsonl",
                              "{\"id\":\"a\",\"text\":\"Hello  There\",\"source_label\":\"x\"}\n"
                              "\n"
                              "{\"id\":\"b\",\"text\":\"second doc\"}\n");
  const auto docs = load_documents(path);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs.documents[0].text, "hello there");
  EXPECT_EQ(docs.documents[1].source_label, "");

  const auto out = dir.path() / "out.jsonl";
  write_manifest(docs, out);
  const auto again = load_documents(out);
  ASSERT_EQ(again.size(), 2u);
  EXPECT_EQ(again.documents[0].source_label, "x");
  EXPECT_EQ(again.documents[1].text, "second doc");
}

TEST(LoadDocuments, MalformedManifestReportsLine) {
  TempDir dir;
  const auto path = dir.write("m.jsonl",
                              "{\"id\":\"a\",\"text\":\"ok\"}\n{\"id\":\"b\",\"source_label\":\"x\"}\n");
  try {
    load_documents(path);
    FAIL() << "expected MalformedManifest";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedManifest);
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
  const auto dup = dir.write("d.jsonl", "{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n");
  EXPECT_EQ(code_of([&] { load_documents(dup); }), ErrorCode::MalformedManifest);
  const auto junk = dir.write("j.jsonl", "not json\n");
  EXPECT_EQ(code_of([&] { load_documents(junk); }), ErrorCode::MalformedManifest);
}

TEST(LoadDocuments, MissingPath) {
  EXPECT_EQ(code_of([] { load_documents("/definitely/not/here"); }), ErrorCode::IoError);
}
