#include "dsumm/drake.hpp"

#include <stdexcept>

namespace dsumm {

namespace {

// better(a, b): a beats b under (score desc, span start asc, span length asc).
bool better(const KeyPhraseCandidate& a, const KeyPhraseCandidate& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.span.start != b.span.start) return a.span.start < b.span.start;
  return a.span.length() < b.span.length();
}

KeyPhraseResult pick_winner(std::string tweet_id, std::vector<KeyPhraseCandidate> scored) {
  KeyPhraseResult result;
  result.tweet_id = std::move(tweet_id);
  if (scored.empty()) {
    result.none_found = true;
    return result;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < scored.size(); ++i) {
    if (better(scored[i], scored[best])) best = i;
  }
  result.phrase = scored[best];
  result.all_candidates = std::move(scored);
  return result;
}

}  // namespace

std::vector<KeyPhraseCandidate> candidate_phrases(const std::vector<Token>& tokens) {
  std::vector<KeyPhraseCandidate> out;
  KeyPhraseCandidate current;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind == TokenKind::Word) {
      if (current.words.empty()) current.span.start = i;
      current.words.push_back(tokens[i].surface);
      current.span.end = i + 1;
    } else if (!current.words.empty()) {
      out.push_back(std::move(current));
      current = {};
    }
  }
  if (!current.words.empty()) out.push_back(std::move(current));
  return out;
}

std::unordered_map<std::string, WordStats> word_stats(
    const std::vector<KeyPhraseCandidate>& candidates, const OntologyLexicon& lex, double boost) {
  if (boost <= 0.0) throw std::invalid_argument("boost must be positive");
  std::unordered_map<std::string, WordStats> stats;
  for (const auto& cand : candidates) {
    const int len = static_cast<int>(cand.words.size());
    for (const auto& w : cand.words) {
      auto& s = stats[w];
      s.word = w;
      s.freq += 1;
      // Each occurrence co-occurs once with every word of its phrase,
      // itself included, so it contributes the phrase length.
      s.deg += len;
    }
  }
  for (auto& [word, s] : stats) {
    s.boosted = contains(lex, word);
    s.s_wd = static_cast<double>(s.deg) / static_cast<double>(s.freq);
    if (s.boosted) s.s_wd *= boost;
  }
  return stats;
}

std::vector<KeyPhraseCandidate> score_candidates(
    std::vector<KeyPhraseCandidate> candidates,
    const std::unordered_map<std::string, WordStats>& stats) {
  for (auto& cand : candidates) {
    double score = 0.0;
    for (const auto& w : cand.words) {
      auto it = stats.find(w);
      if (it == stats.end()) {
        throw std::logic_error("word \"" + w + "\" missing from word stats");
      }
      score += it->second.s_wd;
    }
    cand.score = score;
  }
  return candidates;
}

KeyPhraseResult extract_keyphrase(const Tweet& tweet, const OntologyLexicon& lex, double boost) {
  auto candidates = candidate_phrases(tweet.tokens);
  auto stats = word_stats(candidates, lex, boost);
  return pick_winner(tweet.id, score_candidates(std::move(candidates), stats));
}

std::vector<KeyPhraseResult> extract_keyphrases(const Corpus& corpus, const OntologyLexicon& lex,
                                                double boost, StatsScope scope) {
  std::vector<KeyPhraseResult> out;
  out.reserve(corpus.size());
  if (scope == StatsScope::PerTweet) {
    for (const auto& t : corpus.tweets) {
      out.push_back(extract_keyphrase(t, lex, boost));
    }
    return out;
  }
  // Corpus scope: pool statistics over every tweet's candidates, then score
  // and pick per tweet.
  std::vector<std::vector<KeyPhraseCandidate>> per_tweet;
  std::vector<KeyPhraseCandidate> all;
  per_tweet.reserve(corpus.size());
  for (const auto& t : corpus.tweets) {
    per_tweet.push_back(candidate_phrases(t.tokens));
    all.insert(all.end(), per_tweet.back().begin(), per_tweet.back().end());
  }
  auto stats = word_stats(all, lex, boost);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    out.push_back(pick_winner(corpus.tweets[i].id,
                              score_candidates(std::move(per_tweet[i]), stats)));
  }
  return out;
}

}  // namespace dsumm
