#pragma once

// Minimal feed-forward classifier: one rectifier hidden layer, two softmax
// outputs, Adam with decoupled weight decay, hand-written backward pass.

#include "entbreak/linalg.hpp"

#include <string>
#include <vector>

namespace entbreak {

struct FfnnParams {
  Eigen::MatrixXd w1;  // hidden x input
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;  // 2 x hidden
  Eigen::VectorXd b2;

  int input_dim() const { return static_cast<int>(w1.cols()); }
  int hidden_dim() const { return static_cast<int>(w1.rows()); }
  double squared_norm() const;
};

struct TrainConfig {
  double learning_rate = 1e-3;
  double weight_decay = 1e-4;
  int batch_size = 50;
  int epochs = 100;
  int hidden = 32;
  bool l1_decay = false;  // default decoupled quadratic decay
};

// Appendix-style presets: input/hidden sizes, optimizer parameters, data and
// batch sizes for each experiment family. `center_inputs`/`input_gain` set the
// input conditioning used by the confusion sweep: optionally subtract the
// per-feature training-split mean, then scale by a constant contrast factor.
// They are calibrated per family against the analytic oracles.
struct TrainPreset {
  std::string name;
  int input = 0;
  TrainConfig config;
  int data_size = 0;
  bool center_inputs = false;
  double input_gain = 1.0;
};

TrainPreset train_preset(const std::string& name);
std::vector<std::string> train_preset_names();

// Rows of `x` are samples.
struct Batch {
  Eigen::MatrixXd x;
  std::vector<int> labels;  // 0 or 1
};

FfnnParams ffnn_init(int input_dim, int hidden, Rng& rng);

// Softmax class probabilities (F^0, F^1) for one sample.
Eigen::Vector2d ffnn_forward(const FfnnParams& params, const Eigen::VectorXd& x);

// Mean cross-entropy -log F^label over the batch (no decay term).
double ffnn_loss(const FfnnParams& params, const Batch& batch);

// Analytic gradients of ffnn_loss.
FfnnParams ffnn_gradients(const FfnnParams& params, const Batch& batch);

// Hard decision: label 0 iff F^0 >= 1/2.
int ffnn_decide(const FfnnParams& params, const Eigen::VectorXd& x);
double ffnn_accuracy(const FfnnParams& params, const Batch& test);

struct TrainResult {
  FfnnParams best;                  // parameters at the best-test-accuracy epoch
  double best_accuracy = 0.0;
  int best_epoch = -1;
  std::vector<double> accuracy_trace;
};

TrainResult ffnn_train(const FfnnParams& init, const Batch& train, const Batch& test,
                       const TrainConfig& cfg, Rng& rng);

}  // namespace entbreak
