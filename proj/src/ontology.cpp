#include "dsumm/ontology.hpp"

#include <fstream>
#include <limits>
#include <stdexcept>

namespace dsumm {

OntologyLexicon load_lexicon(const std::string& path, const LexiconSet& lex) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon file '" + path + "'");
  OntologyLexicon onto;
  onto.source_name = path;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto tokens = preprocess_tweet(line, lex, std::numeric_limits<std::size_t>::max());
    for (const auto& t : tokens) {
      if (t.kind == TokenKind::Word) onto.terms.insert(t.surface);
    }
  }
  onto.warned_empty = onto.terms.empty();
  return onto;
}

OntologyLexicon empty_lexicon() {
  OntologyLexicon onto;
  onto.source_name = "(none)";
  onto.warned_empty = true;
  return onto;
}

bool contains(const OntologyLexicon& lex, const std::string& word) {
  return lex.terms.count(word) != 0;
}

}  // namespace dsumm
