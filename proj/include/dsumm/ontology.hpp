#pragma once

#include <string>
#include <unordered_set>

#include "dsumm/preprocess.hpp"

namespace dsumm {

// Flat set of normalized disaster-domain words. The score boost tests single
// words, so multi-word lexicon entries are split into their constituent
// content words at load time and any graph structure is dropped.
struct OntologyLexicon {
  std::unordered_set<std::string> terms;
  std::string source_name;
  bool warned_empty = false;
};

// Lexicon file: one term or phrase per line, '#' starts a comment, UTF-8.
// Lines are normalized with the same rules as tweet text; stopwords never
// enter the lexicon.
OntologyLexicon load_lexicon(const std::string& path, const LexiconSet& lex);

/// The empty lexicon; makes the extractor behave as plain RAKE.
OntologyLexicon empty_lexicon();

bool contains(const OntologyLexicon& lex, const std::string& word);

}  // namespace dsumm
