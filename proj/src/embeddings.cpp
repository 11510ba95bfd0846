#include "dsumm/embeddings.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dsumm {

namespace {

[[noreturn]] void fail_line(const std::string& path, std::size_t line_no, const std::string& what) {
  throw std::runtime_error(path + " line " + std::to_string(line_no) + ": " + what);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// splitmix64; fixed generator so fixture files regenerate identically anywhere.
std::uint64_t next_u64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double next_unit_interval(std::uint64_t& state) {
  return static_cast<double>(next_u64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

WordVectorStore load_word_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vector file '" + path + "'");
  WordVectorStore store;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": missing \"count dim\" header");
  std::size_t count = 0;
  {
    std::istringstream header(line);
    long long c = -1, d = -1;
    std::string extra;
    if (!(header >> c >> d) || (header >> extra) || c < 0 || d <= 0) {
      throw std::runtime_error(path + " line 1: header must be \"count dim\"");
    }
    count = static_cast<std::size_t>(c);
    store.dim = static_cast<std::size_t>(d);
  }
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::string word;
    row >> word;
    Vector v(store.dim);
    for (std::size_t i = 0; i < store.dim; ++i) {
      if (!(row >> v[i])) {
        fail_line(path, line_no, "expected " + std::to_string(store.dim) +
                                     " numeric components for \"" + word + "\"");
      }
      if (!std::isfinite(v[i])) fail_line(path, line_no, "non-finite component");
    }
    std::string extra;
    if (row >> extra) {
      fail_line(path, line_no, "row has more than " + std::to_string(store.dim) + " components");
    }
    ++rows;
    if (!store.entries.emplace(word, v).second) {
      store.warnings.push_back("duplicate row for \"" + word + "\" at line " +
                               std::to_string(line_no) + "; last wins");
      store.entries[word] = std::move(v);
    }
  }
  if (rows != count) {
    throw std::runtime_error(path + ": header promises " + std::to_string(count) +
                             " rows but file has " + std::to_string(rows));
  }
  return store;
}

PhraseEmbedding keyphrase_embedding(const KeyPhraseResult& phrase, const WordVectorStore& store) {
  PhraseEmbedding out;
  out.vec.assign(store.dim, 0.0);
  std::size_t found = 0;
  for (const auto& w : phrase.phrase.words) {
    auto it = store.entries.find(w);
    if (it == store.entries.end()) continue;
    for (std::size_t i = 0; i < store.dim; ++i) out.vec[i] += it->second[i];
    ++found;
  }
  if (found == 0) {
    out.oov = true;
    return out;
  }
  for (auto& c : out.vec) c /= static_cast<double>(found);
  return out;
}

Vector PrecomputedTweetVectors::embed(const Tweet& tweet) const {
  auto it = store_.entries.find(tweet.id);
  if (it == store_.entries.end()) {
    throw std::runtime_error("no precomputed vector for tweet id \"" + tweet.id + "\"");
  }
  return it->second;
}

HashTweetEmbedder::HashTweetEmbedder(std::size_t dim, std::uint64_t seed)
    : dim_(dim), seed_(seed) {
  if (dim == 0) throw std::invalid_argument("embedding dim must be >= 1");
}

Vector HashTweetEmbedder::embed(const Tweet& tweet) const {
  Vector acc(dim_, 0.0);
  if (tweet.tokens.empty()) return acc;
  for (const auto& tok : tweet.tokens) {
    std::uint64_t state = fnv1a(tok.surface) ^ (seed_ * 0x9e3779b97f4a7c15ull);
    Vector v(dim_);
    double norm_sq = 0.0;
    for (auto& c : v) {
      c = next_unit_interval(state) * 2.0 - 1.0;
      norm_sq += c * c;
    }
    double norm = std::sqrt(norm_sq);
    if (norm == 0.0) continue;
    for (std::size_t i = 0; i < dim_; ++i) acc[i] += v[i] / norm;
  }
  for (auto& c : acc) c /= static_cast<double>(tweet.tokens.size());
  return acc;
}

Vector tweet_embedding(const Tweet& tweet, const TweetEmbeddingProvider& provider) {
  return provider.embed(tweet);
}

Vector concat(const Vector& te, const Vector& ke) {
  Vector out;
  out.reserve(te.size() + ke.size());
  out.insert(out.end(), te.begin(), te.end());
  out.insert(out.end(), ke.begin(), ke.end());
  return out;
}

}  // namespace dsumm
