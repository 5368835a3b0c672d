#include "coin/classifier.hpp"

#include "coin/errors.hpp"
#include "coin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace coin {

namespace {

using Index = Eigen::Index;

inline double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

Eigen::MatrixXd sigmoid_of(const Eigen::MatrixXd& z) {
  return z.unaryExpr([](double t) { return sigmoid(t); });
}

void check_input(const MlpModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.layer_sizes.front()) {
    throw DimensionMismatch("forward: input length does not match the first layer");
  }
}

// Forward pass over a batch of column vectors, keeping every activation.
std::vector<Eigen::MatrixXd> forward_activations(const MlpModel& model,
                                                 const Eigen::MatrixXd& batch) {
  std::vector<Eigen::MatrixXd> activations;
  activations.reserve(model.weights.size() + 1);
  activations.push_back(batch);
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    activations.push_back(
        sigmoid_of((model.weights[l] * activations.back()).colwise() + model.biases[l]));
  }
  return activations;
}

// Gradients of the per-sample MSE, averaged over the batch columns.
Gradients batch_gradients(const MlpModel& model, const std::vector<Eigen::MatrixXd>& activations,
                          const Eigen::MatrixXd& targets) {
  const auto layers = model.weights.size();
  const double out_count = static_cast<double>(model.layer_sizes.back());
  const double batch = static_cast<double>(targets.cols());

  Gradients grads;
  grads.weights.resize(layers);
  grads.biases.resize(layers);

  const Eigen::MatrixXd& out = activations.back();
  Eigen::MatrixXd delta =
      ((out - targets).array() * (2.0 / out_count) * out.array() * (1.0 - out.array())).matrix();
  for (std::size_t l = layers; l-- > 0;) {
    grads.weights[l] = delta * activations[l].transpose() / batch;
    grads.biases[l] = delta.rowwise().sum() / batch;
    if (l > 0) {
      const Eigen::MatrixXd& a = activations[l];
      delta = ((model.weights[l].transpose() * delta).array() * a.array() * (1.0 - a.array()))
                  .matrix();
    }
  }
  return grads;
}

double batch_mse(const MlpModel& model, const Eigen::MatrixXd& inputs,
                 const Eigen::MatrixXd& targets) {
  const Eigen::MatrixXd out = forward_activations(model, inputs).back();
  return (out - targets).squaredNorm() /
         (static_cast<double>(targets.rows()) * static_cast<double>(targets.cols()));
}

void to_matrices(const std::vector<Sample>& samples, Eigen::MatrixXd& inputs,
                 Eigen::MatrixXd& targets) {
  const Index dim = samples.front().features.size();
  inputs.resize(dim, static_cast<Index>(samples.size()));
  targets.resize(kClassCount, static_cast<Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].features.size() != dim) {
      throw DimensionMismatch("train: samples disagree on feature length");
    }
    if (samples[i].label < 0 || samples[i].label >= kClassCount) {
      throw Error("train: class label out of range");
    }
    inputs.col(static_cast<Index>(i)) = samples[i].features;
    targets.col(static_cast<Index>(i)) = one_hot(samples[i].label);
  }
}

}  // namespace

Denomination denomination_of(int class_index) {
  if (class_index < 0 || class_index >= kClassCount) {
    throw Error("denomination_of: class index out of range");
  }
  switch (class_index / 4) {
    case 0: return Denomination::rupee1;
    case 1: return Denomination::rupee2;
    case 2: return Denomination::rupee5;
    default: return Denomination::rupee10;
  }
}

int rupee_value(Denomination d) {
  switch (d) {
    case Denomination::rupee1: return 1;
    case Denomination::rupee2: return 2;
    case Denomination::rupee5: return 5;
    default: return 10;
  }
}

std::string denomination_label(Denomination d) {
  return "₹" + std::to_string(rupee_value(d));
}

MlpModel init_model(const std::vector<int>& layer_sizes, std::uint64_t seed) {
  if (layer_sizes.size() < 3) {
    throw BadTopology("init_model: at least one hidden layer is required");
  }
  if (layer_sizes.back() != kClassCount) {
    throw BadTopology("init_model: output layer must have 14 units");
  }
  for (const int size : layer_sizes) {
    if (size < 1) throw BadTopology("init_model: layer sizes must be positive");
  }

  MlpModel model;
  model.layer_sizes = layer_sizes;
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const int fan_in = layer_sizes[l];
    const int fan_out = layer_sizes[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int i = 0; i < fan_out; ++i) {
      for (int j = 0; j < fan_in; ++j) {
        w(i, j) = rng.uniform(-bound, bound);
      }
    }
    model.weights.push_back(std::move(w));
    model.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return model;
}

Eigen::VectorXd forward(const MlpModel& model, const Eigen::VectorXd& x) {
  check_input(model, x);
  Eigen::VectorXd a = x;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    a = ((model.weights[l] * a + model.biases[l]).unaryExpr([](double t) { return sigmoid(t); }))
            .eval();
  }
  return a;
}

Eigen::VectorXd one_hot(int label) {
  if (label < 0 || label >= kClassCount) {
    throw Error("one_hot: class label out of range");
  }
  Eigen::VectorXd target = Eigen::VectorXd::Zero(kClassCount);
  target(label) = 1.0;
  return target;
}

Gradients backprop_gradients(const MlpModel& model, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& target) {
  check_input(model, x);
  if (target.size() != model.layer_sizes.back()) {
    throw DimensionMismatch("backprop_gradients: target length does not match the output layer");
  }
  const auto activations = forward_activations(model, x);
  return batch_gradients(model, activations, target);
}

std::pair<MlpModel, TrainReport> train(MlpModel model, const std::vector<Sample>& train_set,
                                       const std::vector<Sample>& val_set,
                                       const TrainConfig& config) {
  if (train_set.empty() || val_set.empty()) {
    throw EmptyDataset("train: training and validation sets must be nonempty");
  }
  if (config.batch_size < 1 || static_cast<std::size_t>(config.batch_size) > train_set.size()) {
    throw Error("train: batch_size must be in [1, training-set size]");
  }
  if (config.max_epochs < 1 || config.patience < 1 || !(config.learning_rate >= 0.0)) {
    throw Error("train: max_epochs and patience must be positive, learning_rate non-negative");
  }

  Eigen::MatrixXd train_x, train_t, val_x, val_t;
  to_matrices(train_set, train_x, train_t);
  to_matrices(val_set, val_x, val_t);
  if (train_x.rows() != model.layer_sizes.front()) {
    throw DimensionMismatch("train: feature length does not match the model input layer");
  }

  const Index n = train_x.cols();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  Rng rng(config.seed);

  TrainReport report;
  MlpModel best = model;
  double best_val = std::numeric_limits<double>::infinity();
  int epochs_since_best = 0;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(order);
    for (Index start = 0; start < n; start += config.batch_size) {
      const Index count = std::min<Index>(config.batch_size, n - start);
      Eigen::MatrixXd batch_x(train_x.rows(), count);
      Eigen::MatrixXd batch_t(train_t.rows(), count);
      for (Index i = 0; i < count; ++i) {
        batch_x.col(i) = train_x.col(order[static_cast<std::size_t>(start + i)]);
        batch_t.col(i) = train_t.col(order[static_cast<std::size_t>(start + i)]);
      }
      const auto activations = forward_activations(model, batch_x);
      const Gradients grads = batch_gradients(model, activations, batch_t);
      for (std::size_t l = 0; l < model.weights.size(); ++l) {
        model.weights[l] -= config.learning_rate * grads.weights[l];
        model.biases[l] -= config.learning_rate * grads.biases[l];
      }
    }

    report.train_mse.push_back(batch_mse(model, train_x, train_t));
    const double val_mse = batch_mse(model, val_x, val_t);
    report.validation_mse.push_back(val_mse);
    report.epochs_run = epoch;

    if (val_mse < best_val) {
      best_val = val_mse;
      best = model;
      report.best_epoch = epoch;
      epochs_since_best = 0;
    } else if (++epochs_since_best >= config.patience) {
      break;
    }
  }
  return {std::move(best), std::move(report)};
}

Classification classify(const MlpModel& model, const Eigen::VectorXd& x) {
  const Eigen::VectorXd out = forward(model, x);
  Classification result{0, out(0)};
  for (int k = 1; k < static_cast<int>(out.size()); ++k) {
    if (out(k) > result.confidence) {
      result.confidence = out(k);
      result.label = k;
    }
  }
  return result;
}

}  // namespace coin
