#include "setinfo/triplet.hpp"

namespace setinfo {

Triplet make_triplet(std::string_view x, std::string_view y, std::string_view z,
                     const GramSpec& spec, std::string origin) {
  return Triplet{ngram_set(x, spec), ngram_set(y, spec), ngram_set(z, spec), std::move(origin)};
}

std::string_view to_string(AgentLabel label) {
  switch (label) {
    case AgentLabel::Random: return "random";
    case AgentLabel::Extractor: return "extractor";
    case AgentLabel::GoldFile: return "gold_file";
    case AgentLabel::Synthetic: return "synthetic";
  }
  return "unknown";
}

namespace {
template <typename Member>
std::vector<LingSet> column(const std::vector<Triplet>& triplets, Member member) {
  std::vector<LingSet> out;
  out.reserve(triplets.size());
  for (const auto& t : triplets) out.push_back(t.*member);
  return out;
}
}  // namespace

std::vector<LingSet> StepSample::xs() const { return column(triplets, &Triplet::x); }
std::vector<LingSet> StepSample::ys() const { return column(triplets, &Triplet::y); }
std::vector<LingSet> StepSample::zs() const { return column(triplets, &Triplet::z); }

}  // namespace setinfo
