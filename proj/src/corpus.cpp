#include "dsumm/corpus.hpp"

#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace dsumm {

namespace {

using nlohmann::json;

[[noreturn]] void fail_line(const std::string& path, std::size_t line_no, const std::string& what) {
  throw std::runtime_error(path + " line " + std::to_string(line_no) + ": " + what);
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

std::string trimmed(const std::string& line) {
  std::size_t b = line.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  std::size_t e = line.find_last_not_of(" \t\r");
  return line.substr(b, e - b + 1);
}

}  // namespace

const Tweet* Corpus::find(const std::string& id) const {
  for (const auto& t : tweets) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  Corpus corpus;
  corpus.name = path;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail_line(path, line_no, std::string("malformed record: ") + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("text") ||
        !j["id"].is_string() || !j["text"].is_string()) {
      fail_line(path, line_no, "record must be an object with string \"id\" and \"text\"");
    }
    Tweet t;
    t.id = j["id"].get<std::string>();
    t.raw_text = j["text"].get<std::string>();
    if (t.id.empty()) fail_line(path, line_no, "empty tweet id");
    if (j.contains("label")) {
      if (!j["label"].is_number_integer()) fail_line(path, line_no, "label must be 0 or 1");
      int label = j["label"].get<int>();
      if (label != 0 && label != 1) fail_line(path, line_no, "label must be 0 or 1");
      t.label = label;
    }
    if (!seen.insert(t.id).second) {
      fail_line(path, line_no, "duplicate tweet id \"" + t.id + "\"");
    }
    corpus.tweets.push_back(std::move(t));
  }
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  for (const auto& t : corpus.tweets) {
    json j;
    j["id"] = t.id;
    j["text"] = t.raw_text;
    if (t.label) j["label"] = *t.label;
    out << j.dump() << '\n';
  }
}

GoldSummary load_gold_summary(const std::string& path, const Corpus& corpus) {
  std::ifstream in = open_or_throw(path);
  GoldSummary gold;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string id = trimmed(line);
    if (id.empty()) continue;
    if (!corpus.find(id)) {
      throw std::runtime_error("gold summary id \"" + id + "\" not found in corpus");
    }
    gold.tweet_ids.insert(id);
  }
  gold.warned_empty = gold.tweet_ids.empty();
  return gold;
}

Corpus derive_labels(Corpus corpus, const GoldSummary& gold) {
  for (const auto& id : gold.tweet_ids) {
    if (!corpus.find(id)) {
      throw std::runtime_error("gold summary id \"" + id + "\" not found in corpus");
    }
  }
  for (auto& t : corpus.tweets) {
    t.label = gold.tweet_ids.count(t.id) ? 1 : 0;
  }
  return corpus;
}

std::vector<KeyPhraseAnnotation> load_keyphrase_annotations(const std::string& path,
                                                            bool allow_empty) {
  std::ifstream in = open_or_throw(path);
  std::vector<KeyPhraseAnnotation> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail_line(path, line_no, std::string("malformed record: ") + e.what());
    }
    if (!j.is_object() || !j.contains("tweet_id") || !j["tweet_id"].is_string()) {
      fail_line(path, line_no, "record needs a string \"tweet_id\"");
    }
    KeyPhraseAnnotation a;
    a.tweet_id = j["tweet_id"].get<std::string>();
    // A "no prediction" record may omit the span entirely.
    if (j.value("none_found", false)) {
      if (allow_empty) continue;
      fail_line(path, line_no, "empty span in annotation for \"" + a.tweet_id + "\"");
    }
    if (!j.contains("start") || !j.contains("end") || !j["start"].is_number_integer() ||
        !j["end"].is_number_integer()) {
      fail_line(path, line_no, "record needs integer \"start\" and \"end\"");
    }
    long long start = j["start"].get<long long>();
    long long end = j["end"].get<long long>();
    if (start < 0 || end < start) fail_line(path, line_no, "span must satisfy 0 <= start <= end");
    a.span = {static_cast<std::size_t>(start), static_cast<std::size_t>(end)};
    if (a.span.length() == 0) {
      if (allow_empty) continue;
      fail_line(path, line_no, "empty span in annotation for \"" + a.tweet_id + "\"");
    }
    if (!seen.insert(a.tweet_id).second) {
      fail_line(path, line_no, "duplicate annotation for tweet \"" + a.tweet_id + "\"");
    }
    out.push_back(std::move(a));
  }
  return out;
}

void preprocess_corpus(Corpus& corpus, const LexiconSet& lex, std::size_t max_tokens) {
  for (auto& t : corpus.tweets) {
    t.tokens = preprocess_tweet(t.raw_text, lex, max_tokens);
  }
}

}  // namespace dsumm
