#include "dsumm/summarizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dsumm {

const char* to_string(SimAggregate agg) {
  switch (agg) {
    case SimAggregate::Max:
      return "max";
    case SimAggregate::Mean:
      return "mean";
  }
  throw std::logic_error("summarizer: unknown aggregate");
}

SimAggregate sim_aggregate_from_string(const std::string& name) {
  if (name == "max") return SimAggregate::Max;
  if (name == "mean") return SimAggregate::Mean;
  throw std::invalid_argument("summarizer: unknown aggregate \"" + name +
                              "\" (expected max or mean)");
}

bool Summary::contains(const std::string& tweet_id) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const SummaryEntry& e) { return e.tweet_id == tweet_id; });
}

std::vector<std::string> Summary::ids() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const SummaryEntry& e : entries) out.push_back(e.tweet_id);
  return out;
}

double cosine_similarity(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine: dimension mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

Summary select_summary(const std::map<std::string, double>& salience,
                       const std::map<std::string, Vector>& vectors,
                       const SummaryConfig& config) {
  if (config.lambda_salience < 0.0 || config.lambda_salience > 1.0) {
    throw std::invalid_argument("summarizer: salience threshold must lie in [0, 1]");
  }

  struct Candidate {
    const std::string* id;
    double score;
    const Vector* vec;
  };
  std::vector<Candidate> ranked;
  ranked.reserve(salience.size());
  for (const auto& [id, score] : salience) {
    if (score <= config.lambda_salience) continue;
    auto it = vectors.find(id);
    if (it == vectors.end()) {
      throw std::invalid_argument("summarizer: no vector for tweet \"" + id + "\"");
    }
    ranked.push_back({&id, score, &it->second});
  }
  // Map order is id-ascending, so equal scores keep that order under a
  // stable sort: the documented tie-break for free.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Candidate& a, const Candidate& b) { return a.score > b.score; });

  Summary summary;
  summary.considered = ranked.size();
  std::vector<const Vector*> chosen_vecs;
  for (const Candidate& c : ranked) {
    if (summary.entries.size() >= config.length) break;
    double agg = 0.0;
    if (!chosen_vecs.empty()) {
      if (config.aggregate == SimAggregate::Max) {
        agg = -std::numeric_limits<double>::infinity();
        for (const Vector* v : chosen_vecs) agg = std::max(agg, cosine_similarity(*c.vec, *v));
      } else {
        for (const Vector* v : chosen_vecs) agg += cosine_similarity(*c.vec, *v);
        agg /= static_cast<double>(chosen_vecs.size());
      }
    }
    // First candidate has agg == 0, below any positive threshold; a zero
    // threshold rejects everything after the first only if agg >= 0.
    if (!chosen_vecs.empty() && agg >= config.lambda_similarity) continue;
    summary.entries.push_back({*c.id, c.score});
    chosen_vecs.push_back(c.vec);
  }
  return summary;
}

}  // namespace dsumm
