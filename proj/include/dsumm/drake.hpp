#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "dsumm/corpus.hpp"
#include "dsumm/ontology.hpp"

namespace dsumm {

// DRAKE: RAKE word-degree scoring with a multiplicative boost for words in
// the disaster lexicon. Candidate phrases are maximal runs of content words;
// each word x gets s_wd(x) = deg(x)/freq(x), doubled (by default) when x is
// in the lexicon, and a candidate scores the sum of its words' s_wd. The
// highest-scoring candidate is the tweet's key-phrase.

inline constexpr double kDefaultBoost = 2.0;

struct KeyPhraseCandidate {
  std::vector<std::string> words;
  TokenSpan span;
  double score = 0.0;
};

struct WordStats {
  std::string word;
  int freq = 0;     // occurrences of the word across candidates
  int deg = 0;      // sum of containing-candidate lengths per occurrence
  double s_wd = 0.0;
  bool boosted = false;
};

struct KeyPhraseResult {
  std::string tweet_id;
  KeyPhraseCandidate phrase;
  std::vector<KeyPhraseCandidate> all_candidates;
  bool none_found = false;
};

/// Where word statistics are pooled. PerTweet (the default) computes them
/// within each tweet; Corpus pools them over every tweet's candidates.
enum class StatsScope { PerTweet, Corpus };

// Maximal runs of Word-kind tokens, broken by stopwords, phrase delimiters
// and replacement markers, in document order. Scores are left at 0.
std::vector<KeyPhraseCandidate> candidate_phrases(const std::vector<Token>& tokens);

std::unordered_map<std::string, WordStats> word_stats(
    const std::vector<KeyPhraseCandidate>& candidates, const OntologyLexicon& lex,
    double boost = kDefaultBoost);

// Fills each candidate's score with the sum of its words' s_wd (with
// multiplicity). Every candidate word must be present in stats.
std::vector<KeyPhraseCandidate> score_candidates(
    std::vector<KeyPhraseCandidate> candidates,
    const std::unordered_map<std::string, WordStats>& stats);

// Full per-tweet extraction; ties break to the earliest span start, then the
// shorter span. A tweet with no candidates yields an empty result flagged
// none_found.
KeyPhraseResult extract_keyphrase(const Tweet& tweet, const OntologyLexicon& lex,
                                  double boost = kDefaultBoost);

std::vector<KeyPhraseResult> extract_keyphrases(const Corpus& corpus, const OntologyLexicon& lex,
                                                double boost = kDefaultBoost,
                                                StatsScope scope = StatsScope::PerTweet);

}  // namespace dsumm
