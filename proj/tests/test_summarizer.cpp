#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "dsumm/summarizer.hpp"
#include "test_util.hpp"

using namespace dsumm;

namespace {

// Line-by-line reimplementation of the greedy selection rule, kept separate
// from the library so the two must agree for randomized instances.
std::vector<std::string> greedy_oracle(const std::map<std::string, double>& salience,
                                       const std::map<std::string, Vector>& vectors,
                                       const SummaryConfig& config) {
  std::vector<std::pair<std::string, double>> pool;
  for (const auto& [id, score] : salience) {
    if (score > config.lambda_salience) pool.emplace_back(id, score);
  }
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::vector<std::string> chosen;
  for (const auto& [id, score] : pool) {
    if (chosen.size() >= config.length) break;
    const Vector& v = vectors.at(id);
    bool admit = true;
    if (!chosen.empty()) {
      double agg;
      if (config.aggregate == SimAggregate::Max) {
        agg = cosine_similarity(v, vectors.at(chosen.front()));
        for (std::size_t i = 1; i < chosen.size(); ++i) {
          agg = std::max(agg, cosine_similarity(v, vectors.at(chosen[i])));
        }
      } else {
        agg = 0.0;
        for (const std::string& c : chosen) agg += cosine_similarity(v, vectors.at(c));
        agg /= static_cast<double>(chosen.size());
      }
      admit = agg < config.lambda_similarity;
    }
    if (admit) chosen.push_back(id);
  }
  return chosen;
}

}  // namespace

TEST_CASE("cosine similarity basics") {
  CHECK(cosine_similarity({1.0, 0.0}, {1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(cosine_similarity({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(0.0));
  CHECK(cosine_similarity({1.0, 0.0}, {1.0, 1.0}) ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
  CHECK(cosine_similarity({2.0, 0.0}, {-3.0, 0.0}) == doctest::Approx(-1.0));
  // Zero vectors have no direction; similarity is defined as 0.
  CHECK(cosine_similarity({0.0, 0.0}, {1.0, 2.0}) == 0.0);
  CHECK(cosine_similarity({0.0, 0.0}, {0.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(cosine_similarity({1.0}, {1.0, 2.0}), std::invalid_argument);
  // Scaling either argument changes nothing.
  CHECK(cosine_similarity({0.2, 0.7, -0.1}, {0.5, 0.5, 0.5}) ==
        doctest::Approx(cosine_similarity({2.0, 7.0, -1.0}, {0.5, 0.5, 0.5})).epsilon(1e-12));
}

TEST_CASE("aggregate names round-trip") {
  CHECK(sim_aggregate_from_string("max") == SimAggregate::Max);
  CHECK(sim_aggregate_from_string("mean") == SimAggregate::Mean);
  CHECK(std::string(to_string(SimAggregate::Max)) == "max");
  CHECK(std::string(to_string(SimAggregate::Mean)) == "mean");
  CHECK_THROWS_AS(sim_aggregate_from_string("median"), std::invalid_argument);
}

TEST_CASE("salience filter is strict and feeds the considered count") {
  const std::map<std::string, Vector> vectors = {
      {"a", {1.0, 0.0}}, {"b", {0.0, 1.0}}, {"c", {-1.0, 0.0}}};
  SummaryConfig config;
  config.lambda_salience = 0.5;
  config.length = 10;

  SUBCASE("score equal to the threshold is excluded") {
    const Summary s = select_summary({{"a", 0.5}, {"b", 0.75}, {"c", 0.5}}, vectors, config);
    CHECK(s.ids() == std::vector<std::string>{"b"});
    CHECK(s.considered == 1);
  }
  SUBCASE("nothing qualifies") {
    const Summary s = select_summary({{"a", 0.1}, {"b", 0.2}}, vectors, config);
    CHECK(s.entries.empty());
    CHECK(s.considered == 0);
    CHECK_FALSE(s.contains("a"));
  }
  SUBCASE("filtered-out tweets do not need vectors") {
    const Summary s = select_summary({{"a", 0.9}, {"zz", 0.1}}, vectors, config);
    CHECK(s.ids() == std::vector<std::string>{"a"});
  }
  SUBCASE("qualifying tweet without a vector is an error") {
    CHECK_THROWS_WITH_AS(select_summary({{"zz", 0.9}}, vectors, config),
                         doctest::Contains("zz"), std::invalid_argument);
  }
  SUBCASE("threshold outside [0,1] is rejected") {
    config.lambda_salience = -0.1;
    CHECK_THROWS_AS(select_summary({{"a", 0.9}}, vectors, config), std::invalid_argument);
    config.lambda_salience = 1.5;
    CHECK_THROWS_AS(select_summary({{"a", 0.9}}, vectors, config), std::invalid_argument);
  }
}

TEST_CASE("greedy admission order and redundancy filtering") {
  SummaryConfig config;
  config.lambda_salience = 0.0;
  config.lambda_similarity = 0.5;
  config.length = 10;

  SUBCASE("ranked by salience, ties broken by id") {
    const std::map<std::string, Vector> vectors = {
        {"a", {1.0, 0.0, 0.0}}, {"b", {0.0, 1.0, 0.0}}, {"c", {0.0, 0.0, 1.0}}};
    const Summary s = select_summary({{"c", 0.9}, {"a", 0.4}, {"b", 0.4}}, vectors, config);
    CHECK(s.ids() == std::vector<std::string>{"c", "a", "b"});
    CHECK(s.entries[0].salience == doctest::Approx(0.9));
  }
  SUBCASE("first candidate is always admitted even at zero threshold") {
    config.lambda_similarity = 0.0;
    const std::map<std::string, Vector> vectors = {{"a", {1.0, 0.0}}, {"b", {0.0, 1.0}}};
    const Summary s = select_summary({{"a", 0.9}, {"b", 0.8}}, vectors, config);
    // Orthogonal b has similarity exactly 0, not strictly below 0.
    CHECK(s.ids() == std::vector<std::string>{"a"});
    CHECK(s.considered == 2);
  }
  SUBCASE("similarity equal to the threshold is rejected") {
    const Vector va = {1.0, 0.0};
    const Vector vb = {1.0, 1.0};
    const std::map<std::string, Vector> vectors = {{"a", va}, {"b", vb}};
    const std::map<std::string, double> scores = {{"a", 0.9}, {"b", 0.8}};
    config.lambda_similarity = cosine_similarity(vb, va);
    CHECK(select_summary(scores, vectors, config).ids() == std::vector<std::string>{"a"});
    config.lambda_similarity = std::nextafter(config.lambda_similarity, 1.0);
    CHECK(select_summary(scores, vectors, config).ids() == std::vector<std::string>{"a", "b"});
  }
  SUBCASE("near-duplicate is skipped in favor of a later diverse tweet") {
    const std::map<std::string, Vector> vectors = {
        {"a", {1.0, 0.0}}, {"b", {0.99, 0.14}}, {"c", {0.0, 1.0}}};
    const Summary s =
        select_summary({{"a", 0.9}, {"b", 0.8}, {"c", 0.7}}, vectors, config);
    CHECK(s.ids() == std::vector<std::string>{"a", "c"});
    CHECK(s.considered == 3);
  }
  SUBCASE("max and mean aggregates can disagree") {
    const std::map<std::string, Vector> vectors = {
        {"a", {1.0, 0.0}}, {"b", {0.0, 1.0}}, {"c", {1.0, 0.0}}};
    const std::map<std::string, double> scores = {{"a", 0.9}, {"b", 0.8}, {"c", 0.7}};
    config.lambda_similarity = 0.6;
    config.aggregate = SimAggregate::Max;
    // c matches a exactly: max similarity 1 rejects it.
    CHECK(select_summary(scores, vectors, config).ids() == std::vector<std::string>{"a", "b"});
    config.aggregate = SimAggregate::Mean;
    // Mean over {a, b} is (1 + 0) / 2 = 0.5 < 0.6, so c slips in.
    CHECK(select_summary(scores, vectors, config).ids() ==
          std::vector<std::string>{"a", "b", "c"});
  }
  SUBCASE("length caps the summary and zero length is empty") {
    const std::map<std::string, Vector> vectors = {
        {"a", {1.0, 0.0, 0.0}}, {"b", {0.0, 1.0, 0.0}}, {"c", {0.0, 0.0, 1.0}}};
    const std::map<std::string, double> scores = {{"a", 0.9}, {"b", 0.8}, {"c", 0.7}};
    config.length = 2;
    CHECK(select_summary(scores, vectors, config).ids() == std::vector<std::string>{"a", "b"});
    config.length = 0;
    const Summary empty = select_summary(scores, vectors, config);
    CHECK(empty.entries.empty());
    CHECK(empty.considered == 3);
  }
}

TEST_CASE("randomized instances match the independent oracle") {
  test::Rng rng(20240819);
  const double salience_levels[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.index(10);
    std::map<std::string, double> salience;
    std::map<std::string, Vector> vectors;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string id = "t" + std::to_string(i);
      // Coarse score grid so rank ties actually happen.
      salience[id] = salience_levels[rng.index(5)];
      Vector v(3);
      for (double& x : v) x = rng.uniform(-1.0, 1.0);
      vectors[id] = std::move(v);
    }
    SummaryConfig config;
    config.lambda_salience = rng.chance(0.5) ? 0.0 : 0.3;
    config.lambda_similarity = rng.uniform(0.0, 1.0);
    config.length = 1 + rng.index(5);
    config.aggregate = rng.chance(0.5) ? SimAggregate::Max : SimAggregate::Mean;

    const Summary got = select_summary(salience, vectors, config);
    CHECK(got.ids() == greedy_oracle(salience, vectors, config));

    // Prefix stability: asking for one more tweet never rewrites the front.
    SummaryConfig longer = config;
    longer.length = config.length + 1;
    const std::vector<std::string> more = select_summary(salience, vectors, longer).ids();
    const std::vector<std::string> ids = got.ids();
    REQUIRE(more.size() >= ids.size());
    CHECK(std::equal(ids.begin(), ids.end(), more.begin()));

    // Replay invariant: every admitted tweet really was under the threshold
    // against its predecessors, with salience order respected.
    for (std::size_t i = 0; i < ids.size(); ++i) {
      CHECK(salience.at(ids[i]) > config.lambda_salience);
      if (i == 0) continue;
      CHECK(salience.at(ids[i - 1]) >= salience.at(ids[i]));
      double agg;
      if (config.aggregate == SimAggregate::Max) {
        agg = cosine_similarity(vectors.at(ids[i]), vectors.at(ids[0]));
        for (std::size_t j = 1; j < i; ++j) {
          agg = std::max(agg, cosine_similarity(vectors.at(ids[i]), vectors.at(ids[j])));
        }
      } else {
        agg = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
          agg += cosine_similarity(vectors.at(ids[i]), vectors.at(ids[j]));
        }
        agg /= static_cast<double>(i);
      }
      CHECK(agg < config.lambda_similarity);
    }
  }
}
