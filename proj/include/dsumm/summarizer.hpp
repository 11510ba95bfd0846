#pragma once

#include <map>
#include <string>
#include <vector>

#include "dsumm/corpus.hpp"
#include "dsumm/embeddings.hpp"

namespace dsumm {

inline constexpr std::size_t kDefaultSummaryLength = 40;
inline constexpr double kDefaultSalienceThreshold = 0.2;
inline constexpr double kDefaultSimilarityThreshold = 0.3;

enum class SimAggregate { Max, Mean };

const char* to_string(SimAggregate agg);
SimAggregate sim_aggregate_from_string(const std::string& name);

struct SummaryConfig {
  std::size_t length = kDefaultSummaryLength;
  double lambda_salience = kDefaultSalienceThreshold;
  double lambda_similarity = kDefaultSimilarityThreshold;
  SimAggregate aggregate = SimAggregate::Max;
};

struct SummaryEntry {
  std::string tweet_id;
  double salience = 0.0;
};

struct Summary {
  std::vector<SummaryEntry> entries;  // in admission order (salience desc)
  std::size_t considered = 0;         // candidates above the salience threshold

  bool contains(const std::string& tweet_id) const;
  std::vector<std::string> ids() const;
};

/// Cosine similarity; either vector all-zero yields 0. Dim mismatch throws.
double cosine_similarity(const Vector& a, const Vector& b);

// Greedy selection: rank tweets whose salience is strictly above
// lambda_salience by score (ties broken by id), admit each whose aggregate
// cosine similarity to the summary so far is strictly below
// lambda_similarity, until `length` tweets are chosen.
Summary select_summary(const std::map<std::string, double>& salience,
                       const std::map<std::string, Vector>& vectors,
                       const SummaryConfig& config);

}  // namespace dsumm
