#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "dsumm/preprocess.hpp"
#include "test_util.hpp"

using namespace dsumm;

namespace {

const char* kWorkedSentence =
    "Feature extraction is not that complex. There are many algorithms available that can "
    "help you with feature extraction. Rapid Automatic Keyword Extraction is one of those";

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) out.push_back(t.surface);
  return out;
}

}  // namespace

TEST_CASE("tweet normalization applies the replacement rules in order") {
  const LexiconSet lex = LexiconSet::english();
  const auto tokens = preprocess_tweet("Flood in Chennai! https://t.co/x", lex);
  REQUIRE(tokens.size() == 5);
  CHECK(tokens[0] == Token{"flood", TokenKind::Word});
  CHECK(tokens[1] == Token{"in", TokenKind::Stopword});
  CHECK(tokens[2] == Token{"chennai", TokenKind::Word});
  CHECK(tokens[3].kind == TokenKind::PhraseDelimiter);
  CHECK(tokens[3].surface == "!");
  CHECK(tokens[4] == Token{"url", TokenKind::Url});
}

TEST_CASE("empty input gives an empty token list") {
  CHECK(preprocess_tweet("", LexiconSet::english()).empty());
  CHECK(preprocess_tweet("   \t  ", LexiconSet::english()).empty());
}

TEST_CASE("output is truncated to max_tokens with prefix order preserved") {
  std::string text;
  for (int i = 0; i < 60; ++i) text += "word" + std::to_string(i) + " ";
  const auto tokens = preprocess_tweet(text, LexiconSet::english());
  REQUIRE(tokens.size() == kDefaultMaxTokens);
  for (int i = 0; i < 50; ++i) CHECK(tokens[i].surface == "word" + std::to_string(i));

  const auto three = preprocess_tweet(text, LexiconSet::english(), 3);
  CHECK(surfaces(three) == std::vector<std::string>{"word0", "word1", "word2"});
}

TEST_CASE("max_tokens below one is rejected") {
  CHECK_THROWS_AS(preprocess_tweet("x", LexiconSet::english(), 0), std::invalid_argument);
}

TEST_CASE("hashtags, mentions, and a leading RT become their markers") {
  const LexiconSet lex = LexiconSet::english();

  SUBCASE("hashtag keeps its body as a word") {
    const auto tokens = preprocess_tweet("#flood warning", lex);
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0] == Token{"htg", TokenKind::Hashtag});
    CHECK(tokens[1] == Token{"flood", TokenKind::Word});
    CHECK(tokens[2] == Token{"warning", TokenKind::Word});
  }

  SUBCASE("hashtag body can be a stopword") {
    const auto tokens = preprocess_tweet("#the", lex);
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].kind == TokenKind::Hashtag);
    CHECK(tokens[1] == Token{"the", TokenKind::Stopword});
  }

  SUBCASE("mention handle carries no content") {
    const auto tokens = preprocess_tweet("@redcross thanks", lex);
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0] == Token{"mtn", TokenKind::Mention});
    CHECK(tokens[1] == Token{"thanks", TokenKind::Word});
  }

  SUBCASE("leading RT only") {
    const auto lead = preprocess_tweet("RT @news: flood", lex);
    REQUIRE(lead.size() == 4);
    CHECK(lead[0] == Token{"rtw", TokenKind::Retweet});
    CHECK(lead[1].kind == TokenKind::Mention);
    CHECK(lead[2].kind == TokenKind::PhraseDelimiter);
    CHECK(lead[3] == Token{"flood", TokenKind::Word});

    const auto mid = preprocess_tweet("nice rt everyone", lex);
    REQUIRE(mid.size() == 3);
    CHECK(mid[1] == Token{"rt", TokenKind::Word});
  }

  SUBCASE("url forms") {
    for (const char* text : {"http://a.example/b", "https://a.example", "www.example.com/x?q=1"}) {
      const auto tokens = preprocess_tweet(text, lex);
      REQUIRE(tokens.size() == 1);
      CHECK(tokens[0] == Token{"url", TokenKind::Url});
    }
  }
}

TEST_CASE("punctuation runs collapse into a single phrase delimiter") {
  const auto tokens = preprocess_tweet("flood!!; rescue", LexiconSet::english());
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0].surface == "flood");
  CHECK(tokens[1].kind == TokenKind::PhraseDelimiter);
  CHECK(tokens[2].surface == "rescue");
}

TEST_CASE("hyphen splits words; apostrophe stays inside them") {
  const LexiconSet lex = LexiconSet::english();
  const auto hyphen = preprocess_tweet("low-lying", lex);
  CHECK(surfaces(hyphen) == std::vector<std::string>{"low", "lying"});

  const auto apostrophe = preprocess_tweet("don't panic", lex);
  REQUIRE(apostrophe.size() == 2);
  CHECK(apostrophe[0] == Token{"don't", TokenKind::Stopword});
  CHECK(apostrophe[1] == Token{"panic", TokenKind::Word});
}

TEST_CASE("content words keep only word-kind tokens in order") {
  using test::delim;
  using test::stop;
  using test::word;
  const std::vector<Token> tokens = {word("flood"), stop("in"), word("chennai")};
  const auto content = content_words(tokens);
  REQUIRE(content.size() == 2);
  CHECK(content[0].surface == "flood");
  CHECK(content[1].surface == "chennai");

  CHECK(content_words({stop("the"), stop("of"), delim(".")}).empty());

  const auto with_markers =
      preprocess_tweet("RT @a: flood at http://x.example #flood", LexiconSet::english());
  for (const Token& t : content_words(with_markers)) CHECK(t.kind == TokenKind::Word);
}

TEST_CASE("reference sentence yields the expected unique content words") {
  const auto tokens = preprocess_tweet(kWorkedSentence, LexiconSet::english());
  std::set<std::string> unique;
  for (const Token& t : content_words(tokens)) unique.insert(t.surface);
  CHECK(unique == std::set<std::string>{"feature", "extraction", "complex", "algorithms",
                                        "available", "help", "rapid", "automatic", "keyword"});
}

TEST_CASE("stoplist covers the function words the scoring examples rely on") {
  const LexiconSet lex = LexiconSet::english();
  for (const char* w : {"is", "not", "that", "there", "are", "many", "can", "you", "with", "one",
                        "of", "those", "in"}) {
    CHECK_MESSAGE(lex.stopwords.count(w) == 1, "missing stopword: " << w);
  }
  for (const char* w : {"feature", "extraction", "complex", "algorithms", "available", "help",
                        "rapid", "automatic", "keyword", "rt", "flood"}) {
    CHECK_MESSAGE(lex.stopwords.count(w) == 0, "should not be a stopword: " << w);
  }
}

TEST_CASE("stopword files load with comments and case folding") {
  test::TempFile file("stopwords",
                      "# comment line\n"
                      "The\n"
                      "and  # trailing comment\n"
                      "\n"
                      "OF\n");
  const auto words = load_stopwords(file.path());
  CHECK(words == std::unordered_set<std::string>{"the", "and", "of"});
  CHECK_THROWS(load_stopwords("/nonexistent/stopwords.txt"));
}

TEST_CASE("preprocessing is deterministic and idempotent on normalized text") {
  const LexiconSet lex = LexiconSet::english();
  const std::string raw = "Massive flood hits the river district , hundreds stranded .";
  const auto first = preprocess_tweet(raw, lex);
  CHECK(first == preprocess_tweet(raw, lex));

  std::string rejoined;
  for (const Token& t : first) {
    if (!rejoined.empty()) rejoined += ' ';
    rejoined += t.surface;
  }
  CHECK(preprocess_tweet(rejoined, lex) == first);
}

TEST_CASE("token order is a subsequence of input order") {
  const auto tokens =
      preprocess_tweet("Alpha beta! gamma, delta epsilon", LexiconSet::english());
  std::vector<std::string> words;
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::Word) words.push_back(t.surface);
  }
  CHECK(words == std::vector<std::string>{"alpha", "beta", "gamma", "delta", "epsilon"});
}

TEST_CASE("replacement markers are classified as replaced, words are not") {
  CHECK(is_replaced(TokenKind::Url));
  CHECK(is_replaced(TokenKind::Hashtag));
  CHECK(is_replaced(TokenKind::Mention));
  CHECK(is_replaced(TokenKind::Retweet));
  CHECK_FALSE(is_replaced(TokenKind::Word));
  CHECK_FALSE(is_replaced(TokenKind::Stopword));
  CHECK_FALSE(is_replaced(TokenKind::PhraseDelimiter));
  CHECK_FALSE(is_replaced(TokenKind::Pad));
}
