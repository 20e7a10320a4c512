#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pipelife/features.hpp"

namespace pipelife::mlp {

enum class Activation { Sigmoid, Tanh };

[[nodiscard]] std::string_view to_string(Activation a) noexcept;
[[nodiscard]] Activation parse_activation(std::string_view s);

struct MlpConfig {
  std::string name = "ANN";
  std::vector<Feature> inputs;
  int hidden_neurons = 5;
  Activation activation = Activation::Sigmoid;
  double learning_rate = 0.1;
  int epochs = 500;
  int batch_size = 32;  // 0 = full batch
  std::uint64_t seed = 1;
  int restarts = 1;     // independent initializations; best validation wins

  /// Throws Error{InvalidConfig}.
  void validate() const;
};

/// One hidden layer, linear output: y = w2 . act(w1 x + b1) + b2.
struct MlpModel {
  Eigen::MatrixXd w1;  // hidden x inputs
  Eigen::VectorXd b1;  // hidden
  Eigen::VectorXd w2;  // hidden
  double b2 = 0.0;
  std::vector<Scaling> input_scaling;
  Scaling target_scaling = Scaling::identity();
  MlpConfig config;
  bool trained = false;

  [[nodiscard]] Eigen::Index inputs() const noexcept { return w1.cols(); }
  [[nodiscard]] Eigen::Index hidden() const noexcept { return w1.rows(); }
  [[nodiscard]] bool all_finite() const noexcept;
};

/// Glorot-uniform weights drawn from [-r, r], r = sqrt(6 / (fan_in + fan_out));
/// zero biases. Deterministic per seed. Throws Error{InvalidConfig}.
[[nodiscard]] MlpModel init(const MlpConfig& config);

/// Normalized-space prediction for one row. Throws Error{DimensionMismatch}.
[[nodiscard]] double forward(const MlpModel& m, std::span<const double> x);
[[nodiscard]] Eigen::VectorXd forward_batch(const MlpModel& m, const Eigen::MatrixXd& x);

struct Gradients {
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::VectorXd w2;
  double b2 = 0.0;
};

struct LossAndGradient {
  double loss = 0.0;  // mean squared error
  Gradients grad;
};

/// Exact backpropagated gradient of the batch MSE.
/// Errors: EmptyBatch, DimensionMismatch.
[[nodiscard]] LossAndGradient loss_and_gradient(const MlpModel& m, const Eigen::MatrixXd& x,
                                                const Eigen::VectorXd& y);

/// Flattened parameter view (w1 row-major, b1, w2, b2); used by gradient
/// checks and the optimizer.
[[nodiscard]] Eigen::VectorXd flatten(const MlpModel& m);
[[nodiscard]] Eigen::VectorXd flatten(const Gradients& g);
void unflatten(MlpModel& m, const Eigen::VectorXd& params);

struct EpochLoss {
  double train = 0.0;
  double validation = 0.0;  // equals train when there is no validation split
};

struct TrainResult {
  MlpModel model;
  std::vector<EpochLoss> history;
  int best_epoch = 0;  // 0-based
};

/// Stochastic gradient descent over shuffled minibatches. The returned
/// parameters are the snapshot with the lowest validation MSE across all
/// epochs and restarts. `data.columns` must equal `config.inputs`.
///
/// Errors: EmptySplit (no training rows), InvalidConfig, MissingTarget.
[[nodiscard]] TrainResult train(const MlpConfig& config, const FeatureMatrix& data);

/// Raw-unit prediction for a record using the model's stored scaling.
[[nodiscard]] double predict(const MlpModel& m, const PipeRecord& rec);

}  // namespace pipelife::mlp
