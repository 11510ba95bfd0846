#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "dsumm/corpus.hpp"
#include "dsumm/drake.hpp"

namespace dsumm {

using Vector = std::vector<double>;

// Plain-text vector file: header line "count dim", then one "key v1 ... vdim"
// row per line. Used both for word vectors and for tweet-vector sidecar
// files keyed by tweet id.
struct WordVectorStore {
  std::size_t dim = 0;
  std::unordered_map<std::string, Vector> entries;
  std::vector<std::string> warnings;  // e.g. duplicate rows (last wins)
};

WordVectorStore load_word_vectors(const std::string& path);

struct PhraseEmbedding {
  Vector vec;
  bool oov = false;  // no phrase word was found in the store
};

// Mean of the stored vectors of the phrase's words; words absent from the
// store are skipped rather than diluting the mean. An empty phrase or a
// fully out-of-vocabulary one gives the zero vector, flagged.
PhraseEmbedding keyphrase_embedding(const KeyPhraseResult& phrase, const WordVectorStore& store);

class TweetEmbeddingProvider {
 public:
  virtual ~TweetEmbeddingProvider() = default;
  virtual std::size_t dim() const = 0;
  virtual Vector embed(const Tweet& tweet) const = 0;
};

/// Sidecar file lookup keyed by tweet id; a miss is an error naming the id.
class PrecomputedTweetVectors final : public TweetEmbeddingProvider {
 public:
  explicit PrecomputedTweetVectors(WordVectorStore store) : store_(std::move(store)) {}

  std::size_t dim() const override { return store_.dim; }
  Vector embed(const Tweet& tweet) const override;

 private:
  WordVectorStore store_;
};

// Deterministic, seed-reproducible stand-in for a sentence encoder: the mean
// of per-token pseudo-random unit vectors. Carries no semantics; it exists
// so the full pipeline runs and tests without any model download.
class HashTweetEmbedder final : public TweetEmbeddingProvider {
 public:
  HashTweetEmbedder(std::size_t dim, std::uint64_t seed);

  std::size_t dim() const override { return dim_; }
  Vector embed(const Tweet& tweet) const override;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

Vector tweet_embedding(const Tweet& tweet, const TweetEmbeddingProvider& provider);

/// te's components first, then ke's; dim adds up.
Vector concat(const Vector& te, const Vector& ke);

}  // namespace dsumm
