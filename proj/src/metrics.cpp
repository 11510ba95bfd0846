#include "dsumm/metrics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace dsumm {
namespace {

double harmonic_f1(double precision, double recall) {
  const double denom = precision + recall;
  if (denom == 0.0) return 0.0;
  return 2.0 * precision * recall / denom;
}

// n-grams as joined strings; 0x1f never appears in token surfaces.
std::unordered_map<std::string, int> ngram_counts(const std::vector<std::string>& tokens, int n) {
  std::unordered_map<std::string, int> counts;
  if (tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

const Tweet& find_tweet(const Corpus& corpus, const std::string& id, const char* what) {
  const Tweet* t = corpus.find(id);
  if (t == nullptr) {
    throw std::invalid_argument(std::string(what) + ": tweet \"" + id + "\" not in corpus");
  }
  return *t;
}

void check_span(const TokenSpan& span, const Tweet& tweet, const char* what) {
  if (span.end > tweet.tokens.size()) {
    throw std::invalid_argument(std::string(what) + ": span [" + std::to_string(span.start) +
                                ", " + std::to_string(span.end) + ") exceeds the " +
                                std::to_string(tweet.tokens.size()) + " tokens of tweet \"" +
                                tweet.id + "\"");
  }
}

std::set<std::string> span_word_set(const Tweet& tweet, const TokenSpan& span) {
  std::set<std::string> words;
  for (std::size_t i = span.start; i < span.end; ++i) words.insert(tweet.tokens[i].surface);
  return words;
}

void check_threshold(double threshold) {
  if (threshold < 0.0 || threshold > 1.0) {
    throw std::invalid_argument("iou_f1: threshold must lie in [0, 1], got " +
                                std::to_string(threshold));
  }
}

// Shared walk over the union of annotated tweets; feeds both metrics and the
// combined report.
std::vector<PerTweetOverlap> overlap_details(const std::map<std::string, TokenSpan>& predictions,
                                             const std::map<std::string, TokenSpan>& gold,
                                             const Corpus& corpus, double threshold) {
  std::set<std::string> ids;
  for (const auto& [id, span] : predictions) ids.insert(id);
  for (const auto& [id, span] : gold) ids.insert(id);

  std::vector<PerTweetOverlap> details;
  details.reserve(ids.size());
  for (const std::string& id : ids) {
    PerTweetOverlap d;
    d.tweet_id = id;
    auto pit = predictions.find(id);
    auto git = gold.find(id);
    d.has_prediction = pit != predictions.end();
    d.has_gold = git != gold.end();

    const Tweet& tweet = find_tweet(corpus, id, "keyphrase-eval");
    std::set<std::string> pred_words, gold_words;
    if (d.has_prediction) {
      check_span(pit->second, tweet, "keyphrase-eval: prediction");
      pred_words = span_word_set(tweet, pit->second);
    }
    if (d.has_gold) {
      check_span(git->second, tweet, "keyphrase-eval: gold");
      gold_words = span_word_set(tweet, git->second);
    }

    if (d.has_prediction && d.has_gold) {
      d.iou = iou(pit->second, git->second);
      d.matched = d.iou >= threshold;
    }

    std::size_t inter = 0;
    for (const std::string& w : pred_words) inter += gold_words.count(w);
    const std::size_t uni = pred_words.size() + gold_words.size() - inter;
    d.jaccard = uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
    details.push_back(std::move(d));
  }
  return details;
}

KeyphraseEvalReport report_from_details(std::vector<PerTweetOverlap> details,
                                        std::size_t n_predictions, std::size_t n_gold) {
  KeyphraseEvalReport report;
  std::size_t matches = 0;
  double jaccard_sum = 0.0;
  for (const PerTweetOverlap& d : details) {
    if (d.matched) ++matches;
    jaccard_sum += d.jaccard;
  }
  report.iou_precision =
      n_predictions == 0 ? 0.0 : static_cast<double>(matches) / static_cast<double>(n_predictions);
  report.iou_recall = n_gold == 0 ? 0.0 : static_cast<double>(matches) / static_cast<double>(n_gold);
  report.iou_f1 = harmonic_f1(report.iou_precision, report.iou_recall);
  report.jaccard_mean =
      details.empty() ? 0.0 : jaccard_sum / static_cast<double>(details.size());
  report.per_tweet = std::move(details);
  return report;
}

}  // namespace

std::vector<std::string> evaluation_tokens(const Tweet& tweet, bool keep_boilerplate) {
  std::vector<std::string> out;
  out.reserve(tweet.tokens.size());
  for (const Token& tok : tweet.tokens) {
    switch (tok.kind) {
      case TokenKind::Word:
      case TokenKind::Stopword:
        out.push_back(tok.surface);
        break;
      case TokenKind::Url:
      case TokenKind::Hashtag:
      case TokenKind::Mention:
      case TokenKind::Retweet:
        if (keep_boilerplate) out.push_back(tok.surface);
        break;
      case TokenKind::PhraseDelimiter:
      case TokenKind::Pad:
        break;
    }
  }
  return out;
}

std::vector<std::string> flatten_summary(const std::vector<std::string>& ids, const Corpus& corpus,
                                         bool keep_boilerplate) {
  std::vector<std::string> out;
  for (const std::string& id : ids) {
    const Tweet& tweet = find_tweet(corpus, id, "flatten-summary");
    std::vector<std::string> toks = evaluation_tokens(tweet, keep_boilerplate);
    out.insert(out.end(), toks.begin(), toks.end());
  }
  return out;
}

std::vector<std::string> corpus_order(const GoldSummary& gold, const Corpus& corpus) {
  std::vector<std::string> out;
  out.reserve(gold.tweet_ids.size());
  for (const Tweet& t : corpus.tweets) {
    if (gold.tweet_ids.count(t.id) != 0) out.push_back(t.id);
  }
  return out;
}

RougeScore rouge_n(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference, int n) {
  if (n != 1 && n != 2) {
    throw std::invalid_argument("rouge_n: n must be 1 or 2, got " + std::to_string(n));
  }
  const auto cand = ngram_counts(candidate, n);
  const auto ref = ngram_counts(reference, n);
  std::size_t cand_total = 0, ref_total = 0, overlap = 0;
  for (const auto& [gram, count] : cand) cand_total += static_cast<std::size_t>(count);
  for (const auto& [gram, count] : ref) ref_total += static_cast<std::size_t>(count);
  for (const auto& [gram, count] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += static_cast<std::size_t>(std::min(count, it->second));
  }
  RougeScore s;
  s.precision = cand_total == 0 ? 0.0 : static_cast<double>(overlap) / static_cast<double>(cand_total);
  s.recall = ref_total == 0 ? 0.0 : static_cast<double>(overlap) / static_cast<double>(ref_total);
  s.f1 = harmonic_f1(s.precision, s.recall);
  return s;
}

RougeScore rouge_l(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference) {
  const std::size_t m = candidate.size(), n = reference.size();
  RougeScore s;
  if (m == 0 || n == 0) return s;
  // Two-row LCS table.
  std::vector<std::size_t> prev(n + 1, 0), cur(n + 1, 0);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      cur[j] = candidate[i - 1] == reference[j - 1] ? prev[j - 1] + 1
                                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  const double lcs = static_cast<double>(prev[n]);
  s.precision = lcs / static_cast<double>(m);
  s.recall = lcs / static_cast<double>(n);
  s.f1 = harmonic_f1(s.precision, s.recall);
  return s;
}

RougeReport rouge_report(const std::vector<std::string>& candidate,
                         const std::vector<std::string>& reference) {
  RougeReport r;
  r.rouge1 = rouge_n(candidate, reference, 1);
  r.rouge2 = rouge_n(candidate, reference, 2);
  r.rougeL = rouge_l(candidate, reference);
  return r;
}

double iou(const TokenSpan& a, const TokenSpan& b) {
  const std::size_t lo = std::max(a.start, b.start);
  const std::size_t hi = std::min(a.end, b.end);
  const std::size_t inter = hi > lo ? hi - lo : 0;
  const std::size_t uni = a.length() + b.length() - inter;
  if (uni == 0) return 1.0;  // two empty spans
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double iou_f1(const std::map<std::string, TokenSpan>& predictions,
              const std::map<std::string, TokenSpan>& gold, const Corpus& corpus,
              double threshold) {
  check_threshold(threshold);
  return report_from_details(overlap_details(predictions, gold, corpus, threshold),
                             predictions.size(), gold.size())
      .iou_f1;
}

double jaccard(const std::map<std::string, TokenSpan>& predictions,
               const std::map<std::string, TokenSpan>& gold, const Corpus& corpus) {
  return report_from_details(overlap_details(predictions, gold, corpus, kDefaultIouThreshold),
                             predictions.size(), gold.size())
      .jaccard_mean;
}

KeyphraseEvalReport keyphrase_eval(const std::map<std::string, TokenSpan>& predictions,
                                   const std::map<std::string, TokenSpan>& gold,
                                   const Corpus& corpus, double threshold) {
  check_threshold(threshold);
  return report_from_details(overlap_details(predictions, gold, corpus, threshold),
                             predictions.size(), gold.size());
}

}  // namespace dsumm
