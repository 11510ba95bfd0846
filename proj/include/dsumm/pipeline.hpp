#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "dsumm/corpus.hpp"
#include "dsumm/drake.hpp"
#include "dsumm/embeddings.hpp"
#include "dsumm/metrics.hpp"
#include "dsumm/ontology.hpp"
#include "dsumm/salience.hpp"
#include "dsumm/summarizer.hpp"

namespace dsumm {

inline constexpr std::size_t kDefaultHashDim = 32;

struct PipelineConfig {
  // Input files. Only the corpus is mandatory; everything else has an
  // offline-friendly fallback (empty ontology, hash embeddings, fresh model).
  std::string corpus_path;
  std::string ontology_path;
  std::string word_vectors_path;   // key-phrase word vectors
  std::string tweet_vectors_path;  // precomputed per-tweet vectors
  std::string model_path;          // load instead of training
  std::string gold_path;           // labels for training + ROUGE reference

  // Output files ("" = skip / stdout at the CLI layer).
  std::string out_path;
  std::string save_model_path;

  std::size_t max_tokens = kDefaultMaxTokens;
  double boost = kDefaultBoost;
  StatsScope stats_scope = StatsScope::PerTweet;
  std::size_t hash_dim = kDefaultHashDim;
  std::uint64_t seed = 0;
  std::size_t hidden_dim = kDefaultHiddenDim;
  double dropout_p = kDefaultDropout;
  bool similarity_on_concat = false;  // diversity on concat features, not tweet vectors
  bool keep_boilerplate = false;      // keep url/htg/mtn/rtw in ROUGE tokens
  SummaryConfig summary;
  TrainConfig train;
};

/// The full effective configuration as pretty-printed JSON (defaults included).
std::string effective_config_json(const PipelineConfig& config, int indent = 2);

struct FeatureBundle {
  std::unordered_map<std::string, Vector> features;  // tweet ++ key-phrase embedding
  std::map<std::string, Vector> similarity;          // vectors the selection step compares
  std::size_t feature_dim = 0;
  std::vector<std::string> warnings;
};

FeatureBundle compute_features(const Corpus& corpus, const std::vector<KeyPhraseResult>& phrases,
                               const PipelineConfig& config);

struct PipelineResult {
  Corpus corpus;  // preprocessed (and labeled when a gold file was given)
  std::vector<KeyPhraseResult> keyphrases;
  std::map<std::string, double> salience;
  Summary summary;
  bool trained = false;
  std::vector<double> epoch_mean_loss;
  SalienceModel model;
  bool evaluated = false;
  RougeReport rouge;
  std::vector<std::string> warnings;
};

// preprocess -> key-phrase extraction -> embed -> score -> select, with ROUGE
// against the gold summary when one is given. Model source: model_path if
// set, else train on gold labels if gold_path is set, else a seeded fresh
// model (untrained scores hover near 0.5, so selection still proceeds).
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace dsumm
