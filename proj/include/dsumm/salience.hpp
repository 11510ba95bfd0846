#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dsumm/corpus.hpp"
#include "dsumm/embeddings.hpp"

namespace dsumm {

inline constexpr const char* kModelFormatVersion = "salience-model/1";
inline constexpr double kDefaultDropout = 0.5;
inline constexpr std::size_t kDefaultHiddenDim = 128;

enum class LossKind { Bce, Mse };

const char* to_string(LossKind kind);
LossKind loss_kind_from_string(const std::string& name);

// One rectified hidden layer with inverted dropout, then a linear unit and a
// sigmoid. Maps the concatenated tweet+key-phrase embedding to a salience
// score in (0,1).
struct SalienceModel {
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;
  std::vector<double> w1;  // hidden_dim x input_dim, row-major
  std::vector<double> b1;  // hidden_dim
  std::vector<double> w2;  // hidden_dim
  double b2 = 0.0;
  double dropout_p = kDefaultDropout;  // applied only while training
  std::string version = kModelFormatVersion;

  std::size_t parameter_count() const { return w1.size() + b1.size() + w2.size() + 1; }
};

struct TrainConfig {
  std::size_t epochs = 3;
  std::size_t batch_size = 128;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double learning_rate = 1e-3;
  double epsilon = 1e-8;
  LossKind loss = LossKind::Bce;
  std::uint64_t seed = 0;
};

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double learning_rate = 1e-3;
  double epsilon = 1e-8;
};

class AdamOptimizer {
 public:
  AdamOptimizer(std::size_t parameter_count, AdamConfig config = {});

  /// One update step in place; params and grads must have the configured size.
  void step(std::span<double> params, std::span<const double> grads);

  std::int64_t step_count() const { return step_count_; }

 private:
  AdamConfig config_;
  std::vector<double> first_moment_;
  std::vector<double> second_moment_;
  std::int64_t step_count_ = 0;
};

// Weights from a symmetric fan-in-scaled uniform distribution, biases zero,
// fully determined by the seed.
SalienceModel init_model(std::size_t input_dim, std::size_t hidden_dim, std::uint64_t seed,
                         double dropout_p = kDefaultDropout);

/// Inference forward: deterministic, dropout off.
double forward(const SalienceModel& model, const Vector& x);

/// Training forward with inverted dropout driven by rng_state (splitmix64).
double forward_training(const SalienceModel& model, const Vector& x, std::uint64_t& rng_state);

/// pred is clamped to [1e-7, 1 - 1e-7] before any logarithm.
double loss(double pred, int target, LossKind kind);

struct SalienceGradients {
  std::vector<double> w1;
  std::vector<double> b1;
  std::vector<double> w2;
  double b2 = 0.0;
};

/// Analytic gradients of loss(forward(model, x), target) on the inference path.
SalienceGradients gradients(const SalienceModel& model, const Vector& x, int target,
                            LossKind kind);

struct TrainResult {
  SalienceModel model;
  std::vector<double> epoch_mean_loss;
};

// Mini-batch Adam over a seeded shuffle of the corpus. Every tweet must be
// labeled and have a feature vector of the model's input dim. Loss is
// averaged within each batch; the trace records the per-epoch mean.
TrainResult train(SalienceModel model, const Corpus& corpus,
                  const std::unordered_map<std::string, Vector>& features,
                  const TrainConfig& config);

std::map<std::string, double> score_corpus(const SalienceModel& model, const Corpus& corpus,
                                           const std::unordered_map<std::string, Vector>& features);

// Versioned JSON checkpoint: dims, flattened row-major weights, and an echo
// of the training config when one is given.
void save_model(const SalienceModel& model, const std::string& path,
                const TrainConfig* trained_with = nullptr);
SalienceModel load_model(const std::string& path);

}  // namespace dsumm
