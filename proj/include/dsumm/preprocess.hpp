#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

namespace dsumm {

inline constexpr std::size_t kDefaultMaxTokens = 50;

enum class TokenKind {
  Word,
  Stopword,
  PhraseDelimiter,
  Url,       // replaced "url" marker
  Hashtag,   // replaced "htg" marker (the tag body survives as a Word)
  Mention,   // replaced "mtn" marker
  Retweet,   // replaced "rtw" marker
  Pad,       // reserved for encoders; never produced here
};

/// True for the four replacement markers (url/htg/mtn/rtw).
bool is_replaced(TokenKind kind);

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::Word;

  bool operator==(const Token&) const = default;
};

// Stopwords plus the two delimiter classes that split phrases and words.
// When a symbol could fall into more than one role, phrase delimiter wins
// over word delimiter, which wins over stopword.
struct LexiconSet {
  std::unordered_set<std::string> stopwords;
  std::string word_delimiters;                  // single ASCII characters
  std::vector<std::string> phrase_delimiters;   // ASCII and UTF-8 punctuation

  // Built-in English stoplist with the default delimiter sets.
  static LexiconSet english();
  // Custom stoplist, default delimiters.
  static LexiconSet with_stopwords(std::unordered_set<std::string> stopwords);
};

const std::vector<std::string>& default_stopwords();

/// One term per line, '#' starts a comment, UTF-8.
std::unordered_set<std::string> load_stopwords(const std::string& path);

// Normalizes raw tweet text into the token sequence every downstream stage
// consumes: lowercase, URLs -> "url", "#x" -> "htg" + x, "@x" -> "mtn",
// a leading RT marker -> "rtw", sentence punctuation kept as phrase
// delimiters, output truncated to max_tokens. Never fails; any input gives
// a (possibly empty) list.
std::vector<Token> preprocess_tweet(const std::string& raw_text,
                                    const LexiconSet& lex,
                                    std::size_t max_tokens = kDefaultMaxTokens);

/// Subsequence of tokens with kind Word, order preserved.
std::vector<Token> content_words(const std::vector<Token>& tokens);

}  // namespace dsumm
