#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "pipelife/features.hpp"

namespace pipelife::anfis {

inline constexpr double kSigmaFloor = 1e-4;
inline constexpr double kMinFiringSum = 1e-300;
inline constexpr int kDefaultRuleCap = 256;
inline constexpr int kMaxStepHalvings = 30;

struct GaussianMf {
  double center = 0.0;
  double sigma = 1.0;

  /// exp(-(x - c)^2 / (2 sigma^2))
  [[nodiscard]] double operator()(double x) const noexcept;
};

/// Grid partition: one rule per combination of membership functions.
struct RuleBase {
  std::vector<Feature> inputs;
  int mfs_per_input = 2;
  std::vector<std::vector<int>> rules;  // rules[r][j] = MF index of input j

  [[nodiscard]] std::size_t rule_count() const noexcept { return rules.size(); }
  [[nodiscard]] std::size_t input_count() const noexcept { return inputs.size(); }
  /// All m^d combinations, last input varying fastest.
  [[nodiscard]] static RuleBase grid(std::vector<Feature> inputs, int mfs_per_input);
};

struct EpochLog {
  double rmse_before_lse = 0.0;  // previous consequents, current premises
  double train_rmse = 0.0;       // after the consequent solve
  double validation_rmse = 0.0;  // equals train_rmse without a validation split
};

/// First-order Sugeno system. consequents(r, j) for j < d is the coefficient
/// of input j in rule r; column d is the constant.
struct AnfisModel {
  RuleBase rulebase;
  std::vector<std::vector<GaussianMf>> mfs;  // [input][mf]
  Eigen::MatrixXd consequents;
  std::vector<Scaling> input_scaling;
  Scaling target_scaling = Scaling::identity();
  std::vector<EpochLog> log;
  bool trained = false;
  bool rank_deficient = false;  // last consequent solve hit a rank-deficient design

  [[nodiscard]] std::size_t inputs() const noexcept { return rulebase.input_count(); }
  [[nodiscard]] std::size_t rules() const noexcept { return rulebase.rule_count(); }
  [[nodiscard]] bool all_finite() const noexcept;
};

/// Centers equally spaced over each input's observed [min, max] in `data`,
/// sigma = spacing / sqrt(2), zero consequents. A constant input uses unit
/// spacing around its value.
///
/// Errors: TooFewMfs (m < 2), RuleExplosion (m^d > rule_cap), UnknownColumn
/// (input not present in `data`).
[[nodiscard]] AnfisModel init_grid(const std::vector<Feature>& inputs, int mfs_per_input,
                                   const FeatureMatrix& data, int rule_cap = kDefaultRuleCap);

/// Intermediate values of the five layers for one input row.
struct LayerTrace {
  Eigen::MatrixXd membership;    // layer 1: [input][mf]
  Eigen::VectorXd firing;        // layer 2: product of memberships per rule
  Eigen::VectorXd normalized;    // layer 3: firing / sum(firing)
  Eigen::VectorXd rule_output;   // Sugeno consequent f_r(x)
  Eigen::VectorXd weighted;      // layer 4: normalized * rule_output
  double output = 0.0;           // layer 5: sum of layer 4
};

/// Errors: DimensionMismatch, AllRulesZero (sum of firing < 1e-300).
[[nodiscard]] LayerTrace infer(const AnfisModel& m, std::span<const double> x);
[[nodiscard]] double predict_normalized(const AnfisModel& m, std::span<const double> x);
[[nodiscard]] Eigen::VectorXd predict_batch(const AnfisModel& m, const Eigen::MatrixXd& x);
/// Raw-unit prediction for a record using the model's stored scaling.
[[nodiscard]] double predict(const AnfisModel& m, const PipeRecord& rec);

/// Consequent design: row i holds, for each rule r, normalized_r(x_i) times
/// (x_i, 1). Columns are rule-major.
[[nodiscard]] Eigen::MatrixXd consequent_design(const AnfisModel& m, const Eigen::MatrixXd& x);

struct LseResult {
  Eigen::MatrixXd consequents;
  bool rank_deficient = false;
};

/// Least-squares consequents with premises frozen.
[[nodiscard]] LseResult lse_consequents(const AnfisModel& m, const Eigen::MatrixXd& x,
                                        const Eigen::VectorXd& y);

[[nodiscard]] double mse(const AnfisModel& m, const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

/// Premise parameters flattened as all centers (input-major) then all sigmas.
[[nodiscard]] Eigen::VectorXd premise_parameters(const AnfisModel& m);
void set_premise_parameters(AnfisModel& m, const Eigen::VectorXd& params);

/// Analytic gradient of the MSE with respect to premise_parameters(), with
/// consequents held fixed.
[[nodiscard]] Eigen::VectorXd premise_gradient(const AnfisModel& m, const Eigen::MatrixXd& x,
                                               const Eigen::VectorXd& y);

struct HybridResult {
  AnfisModel model;
  std::vector<EpochLog> log;
  int best_epoch = -1;  // -1 when epochs == 0
};

/// Hybrid learning. Before the loop one consequent solve is made; each epoch
/// then solves the consequents for the current premises, logs RMSE, and takes
/// one full-batch gradient step on centers and sigmas (sigmas floored at
/// 1e-4). A step that would raise the training MSE, or silence every rule, is
/// halved up to kMaxStepHalvings times and otherwise skipped, so the training
/// RMSE never increases. Returns the snapshot with the lowest validation RMSE.
///
/// Errors: EmptySplit, MissingTarget, DimensionMismatch.
[[nodiscard]] HybridResult hybrid_train(const AnfisModel& m, const FeatureMatrix& data, int epochs,
                                        double learning_rate);

}  // namespace pipelife::anfis
