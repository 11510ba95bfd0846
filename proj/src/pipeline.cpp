#include "dsumm/pipeline.hpp"

#include <memory>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace dsumm {
namespace {

std::unique_ptr<TweetEmbeddingProvider> make_provider(const PipelineConfig& config,
                                                      std::vector<std::string>& warnings) {
  if (!config.tweet_vectors_path.empty()) {
    WordVectorStore store = load_word_vectors(config.tweet_vectors_path);
    warnings.insert(warnings.end(), store.warnings.begin(), store.warnings.end());
    return std::make_unique<PrecomputedTweetVectors>(std::move(store));
  }
  if (config.hash_dim == 0) {
    throw std::invalid_argument("pipeline: hash embedding dim must be positive");
  }
  return std::make_unique<HashTweetEmbedder>(config.hash_dim, config.seed);
}

// Key-phrase words through the same deterministic hash embedder as tweets
// when no word-vector file is on hand.
Vector hash_phrase_vector(const KeyPhraseResult& result, const HashTweetEmbedder& embedder) {
  Tweet synthetic;
  synthetic.id = result.tweet_id;
  for (const std::string& w : result.phrase.words) {
    synthetic.tokens.push_back({w, TokenKind::Word});
  }
  return embedder.embed(synthetic);
}

}  // namespace

std::string effective_config_json(const PipelineConfig& config, int indent) {
  nlohmann::json j;
  j["version"] = "pipeline-config/1";
  j["paths"] = {{"corpus", config.corpus_path},
                {"ontology", config.ontology_path},
                {"word_vectors", config.word_vectors_path},
                {"tweet_vectors", config.tweet_vectors_path},
                {"model", config.model_path},
                {"gold", config.gold_path},
                {"out", config.out_path},
                {"save_model", config.save_model_path}};
  j["preprocess"] = {{"max_tokens", config.max_tokens}};
  j["keyphrase"] = {{"boost", config.boost},
                    {"stats_scope", config.stats_scope == StatsScope::PerTweet ? "per-tweet"
                                                                               : "corpus"}};
  j["embedding"] = {{"hash_dim", config.hash_dim},
                    {"similarity_on_concat", config.similarity_on_concat}};
  j["model"] = {{"hidden_dim", config.hidden_dim}, {"dropout", config.dropout_p}};
  j["train"] = {{"epochs", config.train.epochs},
                {"batch_size", config.train.batch_size},
                {"beta1", config.train.beta1},
                {"beta2", config.train.beta2},
                {"learning_rate", config.train.learning_rate},
                {"epsilon", config.train.epsilon},
                {"loss", to_string(config.train.loss)},
                {"seed", config.train.seed}};
  j["summary"] = {{"length", config.summary.length},
                  {"lambda_salience", config.summary.lambda_salience},
                  {"lambda_similarity", config.summary.lambda_similarity},
                  {"aggregate", to_string(config.summary.aggregate)}};
  j["evaluation"] = {{"keep_boilerplate", config.keep_boilerplate}};
  j["seed"] = config.seed;
  return j.dump(indent);
}

FeatureBundle compute_features(const Corpus& corpus, const std::vector<KeyPhraseResult>& phrases,
                               const PipelineConfig& config) {
  FeatureBundle bundle;
  std::unique_ptr<TweetEmbeddingProvider> provider = make_provider(config, bundle.warnings);

  const bool have_word_vectors = !config.word_vectors_path.empty();
  WordVectorStore word_store;
  std::unique_ptr<HashTweetEmbedder> phrase_hasher;
  std::size_t ke_dim = 0;
  if (have_word_vectors) {
    word_store = load_word_vectors(config.word_vectors_path);
    bundle.warnings.insert(bundle.warnings.end(), word_store.warnings.begin(),
                           word_store.warnings.end());
    ke_dim = word_store.dim;
  } else {
    if (config.hash_dim == 0) {
      throw std::invalid_argument("pipeline: hash embedding dim must be positive");
    }
    // Offset seed so phrase vectors are not the same stream as tweet vectors.
    phrase_hasher = std::make_unique<HashTweetEmbedder>(config.hash_dim, config.seed ^ 0x9e37ull);
    ke_dim = config.hash_dim;
  }

  std::unordered_map<std::string, const KeyPhraseResult*> by_id;
  for (const KeyPhraseResult& p : phrases) by_id[p.tweet_id] = &p;

  bundle.feature_dim = provider->dim() + ke_dim;
  for (const Tweet& t : corpus.tweets) {
    const Vector te = tweet_embedding(t, *provider);
    Vector ke(ke_dim, 0.0);
    auto it = by_id.find(t.id);
    if (it == by_id.end()) {
      throw std::invalid_argument("pipeline: no key-phrase result for tweet \"" + t.id + "\"");
    }
    if (!it->second->none_found) {
      if (have_word_vectors) {
        ke = keyphrase_embedding(*it->second, word_store).vec;
      } else {
        ke = hash_phrase_vector(*it->second, *phrase_hasher);
      }
    }
    Vector feat = concat(te, ke);
    bundle.similarity[t.id] = config.similarity_on_concat ? feat : te;
    bundle.features[t.id] = std::move(feat);
  }
  return bundle;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  if (config.corpus_path.empty()) {
    throw std::invalid_argument("pipeline: a corpus file is required");
  }
  if (config.summary.length < 1) {
    throw std::invalid_argument("pipeline: summary length must be at least 1");
  }

  PipelineResult result;
  const LexiconSet lex = LexiconSet::english();
  result.corpus = load_corpus(config.corpus_path);
  preprocess_corpus(result.corpus, lex, config.max_tokens);

  OntologyLexicon ontology =
      config.ontology_path.empty() ? empty_lexicon() : load_lexicon(config.ontology_path, lex);
  if (!config.ontology_path.empty() && ontology.warned_empty) {
    result.warnings.push_back("ontology \"" + config.ontology_path +
                              "\" contributed no terms; scoring runs unboosted");
  }

  result.keyphrases = extract_keyphrases(result.corpus, ontology, config.boost, config.stats_scope);

  FeatureBundle bundle = compute_features(result.corpus, result.keyphrases, config);
  result.warnings.insert(result.warnings.end(), bundle.warnings.begin(), bundle.warnings.end());

  GoldSummary gold;
  bool have_gold = !config.gold_path.empty();
  if (have_gold) {
    gold = load_gold_summary(config.gold_path, result.corpus);
    if (gold.warned_empty) {
      result.warnings.push_back("gold file \"" + config.gold_path + "\" lists no tweet ids");
      have_gold = false;
    }
  }

  if (!config.model_path.empty()) {
    result.model = load_model(config.model_path);
    if (result.model.input_dim != bundle.feature_dim) {
      throw std::invalid_argument(
          "pipeline: model expects input dim " + std::to_string(result.model.input_dim) +
          " but features have dim " + std::to_string(bundle.feature_dim));
    }
  } else if (have_gold) {
    result.corpus = derive_labels(std::move(result.corpus), gold);
    SalienceModel fresh =
        init_model(bundle.feature_dim, config.hidden_dim, config.seed, config.dropout_p);
    TrainResult trained = train(std::move(fresh), result.corpus, bundle.features, config.train);
    result.model = std::move(trained.model);
    result.epoch_mean_loss = std::move(trained.epoch_mean_loss);
    result.trained = true;
  } else {
    result.model = init_model(bundle.feature_dim, config.hidden_dim, config.seed, config.dropout_p);
  }

  if (!config.save_model_path.empty()) {
    save_model(result.model, config.save_model_path, result.trained ? &config.train : nullptr);
  }

  result.salience = score_corpus(result.model, result.corpus, bundle.features);
  result.summary = select_summary(result.salience, bundle.similarity, config.summary);
  if (result.summary.entries.size() < config.summary.length) {
    result.warnings.push_back("summary has " + std::to_string(result.summary.entries.size()) +
                              " tweets; " + std::to_string(config.summary.length) +
                              " were requested");
  }

  if (have_gold) {
    const std::vector<std::string> cand =
        flatten_summary(result.summary.ids(), result.corpus, config.keep_boilerplate);
    const std::vector<std::string> ref =
        flatten_summary(corpus_order(gold, result.corpus), result.corpus, config.keep_boilerplate);
    result.rouge = rouge_report(cand, ref);
    result.evaluated = true;
  }
  return result;
}

}  // namespace dsumm
