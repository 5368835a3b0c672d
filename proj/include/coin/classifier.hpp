#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace coin {

inline constexpr int kClassCount = 14;

enum class Denomination { rupee1, rupee2, rupee5, rupee10 };

/// Class ordering: four visual classes per rupee-1/2/5 (head/tail of two
/// coin types) and two for rupee-10 at indices 12-13.
Denomination denomination_of(int class_index);
int rupee_value(Denomination d);
std::string denomination_label(Denomination d);  // "₹1" etc.

/// Fully connected sigmoid network, 400 inputs to 14 outputs.
struct MlpModel {
  std::vector<int> layer_sizes;           // first 400, last 14
  std::vector<Eigen::MatrixXd> weights;   // [l]: layer_sizes[l+1] x layer_sizes[l]
  std::vector<Eigen::VectorXd> biases;    // [l]: layer_sizes[l+1]
  bool normalized_features = true;        // feature scaling the model was trained with
};

struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

struct Sample {
  Eigen::VectorXd features;
  int label = 0;
};

struct TrainConfig {
  int max_epochs = 2000;
  double learning_rate = 0.5;
  int batch_size = 32;
  int patience = 6;
  std::uint64_t seed = 1;
};

struct TrainReport {
  int epochs_run = 0;
  int best_epoch = 0;                 // 1-based epoch with the lowest validation MSE
  std::vector<double> train_mse;      // one entry per epoch, post-update parameters
  std::vector<double> validation_mse;
  double test_mse = 0.0;              // filled by callers that hold a test split
  double test_percent_error = 0.0;
};

struct Classification {
  int label = 0;
  double confidence = 0.0;
};

/// Weights uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)], biases zero,
/// drawn from a seeded generator. Throws BadTopology unless the sizes run
/// 400 -> (at least one hidden layer) -> 14.
MlpModel init_model(const std::vector<int>& layer_sizes, std::uint64_t seed);

/// Per layer a = sigmoid(W a_prev + b); returns the 14 output activations.
Eigen::VectorXd forward(const MlpModel& model, const Eigen::VectorXd& x);

Eigen::VectorXd one_hot(int label);

/// Exact reverse-mode gradients of L = mean_k (target_k - out_k)^2.
Gradients backprop_gradients(const MlpModel& model, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& target);

/// Mini-batch gradient descent with seeded shuffling and early stopping on
/// validation MSE; returns the parameters snapshotted at the best epoch.
std::pair<MlpModel, TrainReport> train(MlpModel model, const std::vector<Sample>& train_set,
                                       const std::vector<Sample>& val_set,
                                       const TrainConfig& config);

/// Argmax of the forward outputs, ties to the lowest index.
Classification classify(const MlpModel& model, const Eigen::VectorXd& x);

}  // namespace coin
