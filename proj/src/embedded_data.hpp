#pragma once

namespace setinfo::embedded {

extern const char* const kVerbLexicon;
extern const char* const kSyntheticGrammar;

}  // namespace setinfo::embedded
