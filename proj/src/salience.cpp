#include "dsumm/salience.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace dsumm {
namespace {

// splitmix64: tiny, seedable, identical everywhere. Used for init, dropout
// masks, and shuffling so training is bit-reproducible across platforms.
std::uint64_t next_u64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Uniform in [0, 1) using 53 random bits.
double next_unit(std::uint64_t& state) {
  return static_cast<double>(next_u64(state) >> 11) * 0x1.0p-53;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

constexpr double kProbFloor = 1e-7;

double clamp_prob(double p) { return std::clamp(p, kProbFloor, 1.0 - kProbFloor); }

struct ForwardTrace {
  std::vector<double> h_pre;   // before ReLU
  std::vector<double> h;       // after ReLU (and dropout when training)
  double z2 = 0.0;
  double pred = 0.0;
};

void check_input(const SalienceModel& model, const Vector& x) {
  if (x.size() != model.input_dim) {
    throw std::invalid_argument("salience: feature vector has dim " + std::to_string(x.size()) +
                                ", model expects " + std::to_string(model.input_dim));
  }
}

ForwardTrace run_forward(const SalienceModel& model, const Vector& x,
                         std::uint64_t* dropout_state) {
  check_input(model, x);
  ForwardTrace t;
  t.h_pre.resize(model.hidden_dim);
  t.h.resize(model.hidden_dim);
  for (std::size_t j = 0; j < model.hidden_dim; ++j) {
    double z = model.b1[j];
    const double* row = model.w1.data() + j * model.input_dim;
    for (std::size_t i = 0; i < model.input_dim; ++i) z += row[i] * x[i];
    t.h_pre[j] = z;
    t.h[j] = z > 0.0 ? z : 0.0;
  }
  if (dropout_state != nullptr && model.dropout_p > 0.0) {
    // Inverted dropout: keep with probability 1-p and rescale, so inference
    // needs no correction.
    const double keep = 1.0 - model.dropout_p;
    for (std::size_t j = 0; j < model.hidden_dim; ++j) {
      t.h[j] = next_unit(*dropout_state) < keep ? t.h[j] / keep : 0.0;
    }
  }
  t.z2 = model.b2;
  for (std::size_t j = 0; j < model.hidden_dim; ++j) t.z2 += model.w2[j] * t.h[j];
  t.pred = sigmoid(t.z2);
  return t;
}

void check_target(int target) {
  if (target != 0 && target != 1) {
    throw std::invalid_argument("salience: target must be 0 or 1, got " + std::to_string(target));
  }
}

// d(loss)/d(z2) for the given loss, where pred = sigmoid(z2).
double dloss_dz2(double pred, int target, LossKind kind) {
  const double p = clamp_prob(pred);
  switch (kind) {
    case LossKind::Bce:
      // BCE through a sigmoid collapses to pred - target.
      return p - static_cast<double>(target);
    case LossKind::Mse:
      return 2.0 * (p - static_cast<double>(target)) * p * (1.0 - p);
  }
  throw std::logic_error("salience: unknown loss kind");
}

// Accumulates gradients for one example into grads (which must be zeroed or
// hold a running sum). mask[j] is the dropout multiplier applied to h[j]
// (1/keep or 0); pass nullptr for the inference path.
void accumulate_gradients(const SalienceModel& model, const Vector& x, const ForwardTrace& t,
                          int target, LossKind kind, const std::vector<double>* mask,
                          SalienceGradients& grads) {
  const double dz2 = dloss_dz2(t.pred, target, kind);
  grads.b2 += dz2;
  for (std::size_t j = 0; j < model.hidden_dim; ++j) {
    grads.w2[j] += dz2 * t.h[j];
    double dh = dz2 * model.w2[j];
    if (mask != nullptr) dh *= (*mask)[j];
    if (t.h_pre[j] <= 0.0) continue;  // ReLU gate
    grads.b1[j] += dh;
    double* grow = grads.w1.data() + j * model.input_dim;
    for (std::size_t i = 0; i < model.input_dim; ++i) grow[i] += dh * x[i];
  }
}

SalienceGradients zero_gradients(const SalienceModel& model) {
  SalienceGradients g;
  g.w1.assign(model.w1.size(), 0.0);
  g.b1.assign(model.b1.size(), 0.0);
  g.w2.assign(model.w2.size(), 0.0);
  g.b2 = 0.0;
  return g;
}

std::vector<double> pack(const SalienceModel& m) {
  std::vector<double> p;
  p.reserve(m.parameter_count());
  p.insert(p.end(), m.w1.begin(), m.w1.end());
  p.insert(p.end(), m.b1.begin(), m.b1.end());
  p.insert(p.end(), m.w2.begin(), m.w2.end());
  p.push_back(m.b2);
  return p;
}

void unpack(const std::vector<double>& p, SalienceModel& m) {
  auto it = p.begin();
  std::copy(it, it + static_cast<std::ptrdiff_t>(m.w1.size()), m.w1.begin());
  it += static_cast<std::ptrdiff_t>(m.w1.size());
  std::copy(it, it + static_cast<std::ptrdiff_t>(m.b1.size()), m.b1.begin());
  it += static_cast<std::ptrdiff_t>(m.b1.size());
  std::copy(it, it + static_cast<std::ptrdiff_t>(m.w2.size()), m.w2.begin());
  it += static_cast<std::ptrdiff_t>(m.w2.size());
  m.b2 = *it;
}

std::vector<double> pack_gradients(const SalienceGradients& g) {
  std::vector<double> p;
  p.reserve(g.w1.size() + g.b1.size() + g.w2.size() + 1);
  p.insert(p.end(), g.w1.begin(), g.w1.end());
  p.insert(p.end(), g.b1.begin(), g.b1.end());
  p.insert(p.end(), g.w2.begin(), g.w2.end());
  p.push_back(g.b2);
  return p;
}

}  // namespace

const char* to_string(LossKind kind) {
  switch (kind) {
    case LossKind::Bce:
      return "bce";
    case LossKind::Mse:
      return "mse";
  }
  throw std::logic_error("salience: unknown loss kind");
}

LossKind loss_kind_from_string(const std::string& name) {
  if (name == "bce") return LossKind::Bce;
  if (name == "mse") return LossKind::Mse;
  throw std::invalid_argument("salience: unknown loss \"" + name + "\" (expected bce or mse)");
}

AdamOptimizer::AdamOptimizer(std::size_t parameter_count, AdamConfig config)
    : config_(config), first_moment_(parameter_count, 0.0), second_moment_(parameter_count, 0.0) {
  if (parameter_count == 0) throw std::invalid_argument("adam: parameter count must be positive");
  if (config_.beta1 < 0.0 || config_.beta1 >= 1.0 || config_.beta2 < 0.0 || config_.beta2 >= 1.0) {
    throw std::invalid_argument("adam: betas must lie in [0, 1)");
  }
  if (config_.learning_rate <= 0.0) throw std::invalid_argument("adam: learning rate must be positive");
  if (config_.epsilon <= 0.0) throw std::invalid_argument("adam: epsilon must be positive");
}

void AdamOptimizer::step(std::span<double> params, std::span<const double> grads) {
  if (params.size() != first_moment_.size() || grads.size() != first_moment_.size()) {
    throw std::invalid_argument("adam: parameter/gradient size mismatch");
  }
  ++step_count_;
  const double b1t = 1.0 - std::pow(config_.beta1, static_cast<double>(step_count_));
  const double b2t = 1.0 - std::pow(config_.beta2, static_cast<double>(step_count_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    first_moment_[i] = config_.beta1 * first_moment_[i] + (1.0 - config_.beta1) * g;
    second_moment_[i] = config_.beta2 * second_moment_[i] + (1.0 - config_.beta2) * g * g;
    const double m_hat = first_moment_[i] / b1t;
    const double v_hat = second_moment_[i] / b2t;
    params[i] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
  }
}

SalienceModel init_model(std::size_t input_dim, std::size_t hidden_dim, std::uint64_t seed,
                         double dropout_p) {
  if (input_dim == 0 || hidden_dim == 0) {
    throw std::invalid_argument("salience: input and hidden dims must be positive");
  }
  if (dropout_p < 0.0 || dropout_p >= 1.0) {
    throw std::invalid_argument("salience: dropout must lie in [0, 1)");
  }
  SalienceModel m;
  m.input_dim = input_dim;
  m.hidden_dim = hidden_dim;
  m.dropout_p = dropout_p;
  m.w1.resize(hidden_dim * input_dim);
  m.b1.assign(hidden_dim, 0.0);
  m.w2.resize(hidden_dim);
  m.b2 = 0.0;
  std::uint64_t state = seed ^ 0x5a11e9ce5eedull;
  const double bound1 = 1.0 / std::sqrt(static_cast<double>(input_dim));
  for (double& w : m.w1) w = (2.0 * next_unit(state) - 1.0) * bound1;
  const double bound2 = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
  for (double& w : m.w2) w = (2.0 * next_unit(state) - 1.0) * bound2;
  return m;
}

double forward(const SalienceModel& model, const Vector& x) {
  return run_forward(model, x, nullptr).pred;
}

double forward_training(const SalienceModel& model, const Vector& x, std::uint64_t& rng_state) {
  return run_forward(model, x, &rng_state).pred;
}

double loss(double pred, int target, LossKind kind) {
  check_target(target);
  const double p = clamp_prob(pred);
  const double y = static_cast<double>(target);
  switch (kind) {
    case LossKind::Bce:
      return -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    case LossKind::Mse:
      return (p - y) * (p - y);
  }
  throw std::logic_error("salience: unknown loss kind");
}

SalienceGradients gradients(const SalienceModel& model, const Vector& x, int target,
                            LossKind kind) {
  check_target(target);
  const ForwardTrace t = run_forward(model, x, nullptr);
  SalienceGradients g = zero_gradients(model);
  accumulate_gradients(model, x, t, target, kind, nullptr, g);
  return g;
}

TrainResult train(SalienceModel model, const Corpus& corpus,
                  const std::unordered_map<std::string, Vector>& features,
                  const TrainConfig& config) {
  if (config.batch_size == 0) throw std::invalid_argument("salience: batch size must be positive");
  if (corpus.tweets.empty()) throw std::invalid_argument("salience: training corpus is empty");

  struct Example {
    const Vector* x;
    int y;
  };
  std::vector<Example> examples;
  examples.reserve(corpus.tweets.size());
  for (const Tweet& t : corpus.tweets) {
    if (!t.label.has_value()) {
      throw std::invalid_argument("salience: tweet \"" + t.id + "\" has no label");
    }
    check_target(*t.label);
    auto it = features.find(t.id);
    if (it == features.end()) {
      throw std::invalid_argument("salience: no feature vector for tweet \"" + t.id + "\"");
    }
    check_input(model, it->second);
    examples.push_back({&it->second, *t.label});
  }

  AdamOptimizer opt(model.parameter_count(),
                    {config.beta1, config.beta2, config.learning_rate, config.epsilon});
  std::uint64_t shuffle_state = config.seed ^ 0x0badc0ffeeull;
  std::uint64_t dropout_state = config.seed ^ 0xd709007ull;

  TrainResult result;
  result.epoch_mean_loss.reserve(config.epochs);
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> params = pack(model);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    // Fisher-Yates with our own rng; std::shuffle's draw sequence is
    // implementation-defined.
    for (std::size_t i = order.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_u64(shuffle_state) % i);
      std::swap(order[i - 1], order[j]);
    }
    double epoch_loss = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(begin + config.batch_size, order.size());
      const double inv_n = 1.0 / static_cast<double>(end - begin);
      SalienceGradients batch = zero_gradients(model);
      std::vector<double> mask(model.hidden_dim, 1.0);
      for (std::size_t k = begin; k < end; ++k) {
        const Example& ex = examples[order[k]];
        ForwardTrace t = run_forward(model, *ex.x, nullptr);
        if (model.dropout_p > 0.0) {
          const double keep = 1.0 - model.dropout_p;
          for (std::size_t j = 0; j < model.hidden_dim; ++j) {
            mask[j] = next_unit(dropout_state) < keep ? 1.0 / keep : 0.0;
            t.h[j] *= mask[j];
          }
          t.z2 = model.b2;
          for (std::size_t j = 0; j < model.hidden_dim; ++j) t.z2 += model.w2[j] * t.h[j];
          t.pred = sigmoid(t.z2);
        } else {
          std::fill(mask.begin(), mask.end(), 1.0);
        }
        const double l = loss(t.pred, ex.y, config.loss);
        if (!std::isfinite(l)) {
          throw std::runtime_error("salience: loss diverged (non-finite) during training");
        }
        epoch_loss += l;
        accumulate_gradients(model, *ex.x, t, ex.y, config.loss, &mask, batch);
      }
      std::vector<double> grads = pack_gradients(batch);
      for (double& g : grads) g *= inv_n;
      opt.step(params, grads);
      unpack(params, model);
    }
    result.epoch_mean_loss.push_back(epoch_loss / static_cast<double>(examples.size()));
  }
  result.model = std::move(model);
  return result;
}

std::map<std::string, double> score_corpus(
    const SalienceModel& model, const Corpus& corpus,
    const std::unordered_map<std::string, Vector>& features) {
  std::map<std::string, double> scores;
  for (const Tweet& t : corpus.tweets) {
    auto it = features.find(t.id);
    if (it == features.end()) {
      throw std::invalid_argument("salience: no feature vector for tweet \"" + t.id + "\"");
    }
    scores[t.id] = forward(model, it->second);
  }
  return scores;
}

void save_model(const SalienceModel& model, const std::string& path,
                const TrainConfig* trained_with) {
  nlohmann::json j;
  j["version"] = model.version;
  j["input_dim"] = model.input_dim;
  j["hidden_dim"] = model.hidden_dim;
  j["dropout_p"] = model.dropout_p;
  j["w1"] = model.w1;
  j["b1"] = model.b1;
  j["w2"] = model.w2;
  j["b2"] = model.b2;
  if (trained_with != nullptr) {
    j["train_config"] = {{"epochs", trained_with->epochs},
                         {"batch_size", trained_with->batch_size},
                         {"beta1", trained_with->beta1},
                         {"beta2", trained_with->beta2},
                         {"learning_rate", trained_with->learning_rate},
                         {"epsilon", trained_with->epsilon},
                         {"loss", to_string(trained_with->loss)},
                         {"seed", trained_with->seed}};
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("salience: cannot open \"" + path + "\" for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("salience: failed writing \"" + path + "\"");
}

SalienceModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("salience: cannot open \"" + path + "\"");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("salience: \"" + path + "\" is not valid JSON: " + e.what());
  }
  if (!j.contains("version") || !j["version"].is_string() ||
      j["version"].get<std::string>() != kModelFormatVersion) {
    throw std::runtime_error("salience: \"" + path + "\" has missing or unsupported version");
  }
  SalienceModel m;
  try {
    m.input_dim = j.at("input_dim").get<std::size_t>();
    m.hidden_dim = j.at("hidden_dim").get<std::size_t>();
    m.dropout_p = j.at("dropout_p").get<double>();
    m.w1 = j.at("w1").get<std::vector<double>>();
    m.b1 = j.at("b1").get<std::vector<double>>();
    m.w2 = j.at("w2").get<std::vector<double>>();
    m.b2 = j.at("b2").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("salience: \"" + path + "\" is missing model fields: " + e.what());
  }
  if (m.input_dim == 0 || m.hidden_dim == 0 || m.w1.size() != m.hidden_dim * m.input_dim ||
      m.b1.size() != m.hidden_dim || m.w2.size() != m.hidden_dim) {
    throw std::runtime_error("salience: \"" + path + "\" has inconsistent dimensions");
  }
  return m;
}

}  // namespace dsumm
