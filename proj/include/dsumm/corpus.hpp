#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dsumm/preprocess.hpp"

namespace dsumm {

struct Tweet {
  std::string id;
  std::string raw_text;
  std::vector<Token> tokens;   // filled by preprocess_corpus
  std::optional<int> label;    // 1 = belongs to the gold summary; absent = unlabeled
};

struct Corpus {
  std::string name;
  std::vector<Tweet> tweets;

  std::size_t size() const { return tweets.size(); }
  const Tweet* find(const std::string& id) const;
};

struct GoldSummary {
  std::set<std::string> tweet_ids;
  bool warned_empty = false;

  std::size_t length() const { return tweet_ids.size(); }
};

/// Half-open token-index interval [start, end).
struct TokenSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool operator==(const TokenSpan&) const = default;
};

struct KeyPhraseAnnotation {
  std::string tweet_id;
  TokenSpan span;
};

// Corpus file: one JSON object per line, keys "id" (string), "text" (string),
// "label" (0/1, optional). UTF-8, LF line endings. A malformed line or a
// duplicate id raises with the offending line number.
Corpus load_corpus(const std::string& path);
void write_corpus(const Corpus& corpus, const std::string& path);

// Gold summary file: one tweet id per line, '#' starts a comment. Every id
// must resolve in the corpus. An id-free file yields an empty gold summary
// with warned_empty set.
GoldSummary load_gold_summary(const std::string& path, const Corpus& corpus);

/// Sets each tweet's label to 1 when its id is in the gold summary, else 0.
Corpus derive_labels(Corpus corpus, const GoldSummary& gold);

// Key-phrase annotation file: one JSON object per line, keys "tweet_id",
// "start", "end" (token indices after preprocessing). Records flagged
// "none_found" or with an empty span are skipped when allow_empty is set
// (predictions), rejected otherwise (gold annotations).
std::vector<KeyPhraseAnnotation> load_keyphrase_annotations(const std::string& path,
                                                            bool allow_empty = false);

void preprocess_corpus(Corpus& corpus, const LexiconSet& lex,
                       std::size_t max_tokens = kDefaultMaxTokens);

}  // namespace dsumm
