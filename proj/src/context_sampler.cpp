#include "setinfo/context_sampler.hpp"

#include "setinfo/error.hpp"

namespace setinfo {

ContextSampler::ContextSampler(const DocumentCollection& docs, std::size_t length)
    : length_(length) {
  if (length == 0) throw Error(ErrorCode::ConfigInvalid, "context length must be positive");
  for (const auto& doc : docs.documents) {
    auto tokens = tokenize_words(doc.text);
    if (tokens.size() >= length) eligible_.push_back({&doc, std::move(tokens)});
  }
  if (eligible_.empty()) {
    throw Error(ErrorCode::CorpusTooSmall,
                "no document has at least " + std::to_string(length) + " tokens");
  }
}

std::vector<Context> ContextSampler::sample(std::size_t n, Rng& rng) const {
  std::vector<Context> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pick = eligible_[uniform_index(rng, eligible_.size())];
    const std::size_t windows = pick.tokens.size() - length_ + 1;
    const auto offset = static_cast<std::size_t>(uniform_index(rng, windows));
    Context ctx;
    ctx.tokens.assign(pick.tokens.begin() + static_cast<std::ptrdiff_t>(offset),
                      pick.tokens.begin() + static_cast<std::ptrdiff_t>(offset + length_));
    ctx.document_id = pick.doc->id;
    ctx.offset = offset;
    out.push_back(std::move(ctx));
  }
  shuffle(std::span<Context>(out), rng);
  return out;
}

}  // namespace setinfo
