#include "dsumm/preprocess.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace dsumm {

namespace {

bool is_space_byte(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Bytes >= 0x80 (UTF-8 continuation and lead bytes not matched as known
// punctuation) count as word bytes so multibyte words pass through unsplit.
bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c >= 0x80;
}

bool is_word_start(const std::string& s, std::size_t pos) {
  return pos < s.size() && is_word_byte(static_cast<unsigned char>(s[pos]));
}

void ascii_lowercase(std::string& s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + ('a' - 'A'));
  }
}

// U+2018/U+2019 curly single quotes act like the ASCII apostrophe.
void normalize_quotes(std::string& s) {
  static const std::string kCurly[] = {"‘", "’"};
  for (const auto& q : kCurly) {
    std::size_t pos = 0;
    while ((pos = s.find(q, pos)) != std::string::npos) {
      s.replace(pos, q.size(), "'");
      ++pos;
    }
  }
}

bool matches_url(const std::string& s, std::size_t pos) {
  if (pos > 0 && is_word_byte(static_cast<unsigned char>(s[pos - 1]))) return false;
  return s.compare(pos, 7, "http://") == 0 || s.compare(pos, 8, "https://") == 0 ||
         s.compare(pos, 4, "www.") == 0;
}

// Reads a word: word bytes with apostrophes allowed inside ("don't").
// Edge apostrophes are quotation, not part of the word.
std::string read_word(const std::string& s, std::size_t& pos) {
  std::string w;
  while (pos < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[pos]);
    if (is_word_byte(c) || c == '\'') {
      w.push_back(static_cast<char>(c));
      ++pos;
    } else {
      break;
    }
  }
  std::size_t b = 0, e = w.size();
  while (b < e && w[b] == '\'') ++b;
  while (e > b && w[e - 1] == '\'') --e;
  return w.substr(b, e - b);
}

class Scanner {
 public:
  Scanner(const LexiconSet& lex) : lex_(lex) {
    phrase_delims_ = lex.phrase_delimiters;
    // Longest first so multibyte punctuation wins over any single-byte prefix.
    std::sort(phrase_delims_.begin(), phrase_delims_.end(),
              [](const std::string& a, const std::string& b) {
                return a.size() != b.size() ? a.size() > b.size() : a < b;
              });
  }

  std::vector<Token> run(std::string text, std::size_t max_tokens) const {
    ascii_lowercase(text);
    normalize_quotes(text);

    std::vector<Token> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      unsigned char c = static_cast<unsigned char>(text[pos]);
      if (is_space_byte(c)) {
        ++pos;
        continue;
      }
      if (matches_url(text, pos)) {
        while (pos < text.size() && !is_space_byte(static_cast<unsigned char>(text[pos]))) ++pos;
        out.push_back({"url", TokenKind::Url});
        continue;
      }
      if (c == '#' && is_word_start(text, pos + 1)) {
        ++pos;
        std::string body = read_word(text, pos);
        out.push_back({"htg", TokenKind::Hashtag});
        if (!body.empty()) out.push_back(classify(body));
        continue;
      }
      if (c == '@' && is_word_start(text, pos + 1)) {
        ++pos;
        read_word(text, pos);  // mention handle carries no content
        out.push_back({"mtn", TokenKind::Mention});
        continue;
      }
      if (std::size_t n = phrase_delim_at(text, pos); n > 0) {
        std::string surface;
        do {
          surface.append(text, pos, n);
          pos += n;
        } while ((n = phrase_delim_at(text, pos)) > 0);
        out.push_back({surface, TokenKind::PhraseDelimiter});
        continue;
      }
      if (is_word_byte(c) || c == '\'') {
        std::string w = read_word(text, pos);
        if (w.empty()) {
          ++pos;  // bare quotes
          continue;
        }
        if (out.empty() && w == "rt") {
          out.push_back({"rtw", TokenKind::Retweet});
        } else {
          out.push_back(classify(w));
        }
        continue;
      }
      // Word delimiters and any unclassified symbol split words and vanish.
      ++pos;
    }
    if (out.size() > max_tokens) out.resize(max_tokens);
    return out;
  }

 private:
  Token classify(std::string w) const {
    TokenKind kind = lex_.stopwords.count(w) ? TokenKind::Stopword : TokenKind::Word;
    return {std::move(w), kind};
  }

  // Length of the phrase delimiter starting at pos, 0 if none. Word
  // delimiters never shadow these: phrase role has precedence.
  std::size_t phrase_delim_at(const std::string& s, std::size_t pos) const {
    for (const auto& d : phrase_delims_) {
      if (s.compare(pos, d.size(), d) == 0) return d.size();
    }
    return 0;
  }

  const LexiconSet& lex_;
  std::vector<std::string> phrase_delims_;
};

}  // namespace

bool is_replaced(TokenKind kind) {
  return kind == TokenKind::Url || kind == TokenKind::Hashtag ||
         kind == TokenKind::Mention || kind == TokenKind::Retweet;
}

LexiconSet LexiconSet::english() {
  return with_stopwords({default_stopwords().begin(), default_stopwords().end()});
}

LexiconSet LexiconSet::with_stopwords(std::unordered_set<std::string> stopwords) {
  LexiconSet lex;
  lex.stopwords = std::move(stopwords);
  lex.word_delimiters = "-/\\&+=*~^%$|<>[]{}`";
  lex.phrase_delimiters = {".", ",", ";", ":", "!", "?", "(", ")", "\"",
                           "—", "–", "…", "“", "”"};
  return lex;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file '" + path + "'");
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    std::string w = line.substr(b, e - b + 1);
    ascii_lowercase(w);
    words.insert(std::move(w));
  }
  return words;
}

std::vector<Token> preprocess_tweet(const std::string& raw_text, const LexiconSet& lex,
                                    std::size_t max_tokens) {
  if (max_tokens < 1) throw std::invalid_argument("max_tokens must be >= 1");
  return Scanner(lex).run(raw_text, max_tokens);
}

std::vector<Token> content_words(const std::vector<Token>& tokens) {
  std::vector<Token> out;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::Word) out.push_back(t);
  }
  return out;
}

}  // namespace dsumm
