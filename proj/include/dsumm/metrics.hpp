#pragma once

#include <map>
#include <string>
#include <vector>

#include "dsumm/corpus.hpp"
#include "dsumm/preprocess.hpp"

namespace dsumm {

inline constexpr double kDefaultIouThreshold = 0.5;

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct RougeReport {
  RougeScore rouge1;
  RougeScore rouge2;
  RougeScore rougeL;
};

// Scoring tokenization: lowercase surfaces with stopwords kept, delimiters
// dropped, and the url/htg/mtn/rtw markers dropped unless keep_boilerplate —
// counting those would inflate overlap between any two tweets.
std::vector<std::string> evaluation_tokens(const Tweet& tweet, bool keep_boilerplate = false);

/// Concatenates evaluation tokens of `ids` in the given order. Unknown id throws.
std::vector<std::string> flatten_summary(const std::vector<std::string>& ids, const Corpus& corpus,
                                         bool keep_boilerplate = false);

/// The ids present in `gold`, in corpus order — a canonical order for a set.
std::vector<std::string> corpus_order(const GoldSummary& gold, const Corpus& corpus);

/// Clipped n-gram overlap precision/recall/F1; n must be 1 or 2.
RougeScore rouge_n(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference, int n);

/// Longest-common-subsequence precision/recall/F1.
RougeScore rouge_l(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference);

RougeReport rouge_report(const std::vector<std::string>& candidate,
                         const std::vector<std::string>& reference);

/// Interval IOU of two half-open token spans; two empty spans count as 1.
double iou(const TokenSpan& a, const TokenSpan& b);

struct PerTweetOverlap {
  std::string tweet_id;
  bool has_prediction = false;
  bool has_gold = false;
  double iou = 0.0;
  double jaccard = 0.0;
  bool matched = false;  // iou >= threshold with both spans present
};

struct KeyphraseEvalReport {
  double iou_precision = 0.0;
  double iou_recall = 0.0;
  double iou_f1 = 0.0;
  double jaccard_mean = 0.0;
  std::vector<PerTweetOverlap> per_tweet;  // union of ids, sorted by id
};

// A prediction matches when its IOU with the same tweet's gold span reaches
// the threshold; precision = matches/#predictions, recall = matches/#golds.
// Spans must fit inside their tweet's token sequence.
double iou_f1(const std::map<std::string, TokenSpan>& predictions,
              const std::map<std::string, TokenSpan>& gold, const Corpus& corpus,
              double threshold = kDefaultIouThreshold);

/// Mean per-tweet Jaccard of the spans' word sets over the union of ids.
double jaccard(const std::map<std::string, TokenSpan>& predictions,
               const std::map<std::string, TokenSpan>& gold, const Corpus& corpus);

KeyphraseEvalReport keyphrase_eval(const std::map<std::string, TokenSpan>& predictions,
                                   const std::map<std::string, TokenSpan>& gold,
                                   const Corpus& corpus,
                                   double threshold = kDefaultIouThreshold);

}  // namespace dsumm
