#include "pipelife/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "pipelife/error.hpp"

namespace pipelife::mlp {

std::string_view to_string(Activation a) noexcept { return a == Activation::Sigmoid ? "sigmoid" : "tanh"; }

Activation parse_activation(std::string_view s) {
  if (s == "sigmoid") return Activation::Sigmoid;
  if (s == "tanh") return Activation::Tanh;
  throw Error(ErrorCode::InvalidConfig, "unknown activation '" + std::string(s) + "'");
}

void MlpConfig::validate() const {
  if (inputs.empty()) throw Error(ErrorCode::InvalidConfig, name + ": no input columns");
  if (hidden_neurons < 1) throw Error(ErrorCode::InvalidConfig, name + ": hidden_neurons must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::InvalidConfig, name + ": learning_rate must be > 0");
  }
  if (epochs < 1) throw Error(ErrorCode::InvalidConfig, name + ": epochs must be >= 1");
  if (batch_size < 0) throw Error(ErrorCode::InvalidConfig, name + ": batch_size must be >= 0");
  if (restarts < 1) throw Error(ErrorCode::InvalidConfig, name + ": restarts must be >= 1");
}

bool MlpModel::all_finite() const noexcept {
  return w1.allFinite() && b1.allFinite() && w2.allFinite() && std::isfinite(b2);
}

namespace {

Eigen::ArrayXXd activate(Activation a, const Eigen::ArrayXXd& z) {
  if (a == Activation::Sigmoid) return 1.0 / (1.0 + (-z).exp());
  return z.tanh();
}

// Derivative expressed through the activation value h = act(z).
Eigen::ArrayXXd activate_grad(Activation a, const Eigen::ArrayXXd& h) {
  if (a == Activation::Sigmoid) return h * (1.0 - h);
  return 1.0 - h.square();
}

void glorot(MlpModel& m, std::mt19937_64& rng) {
  const auto d = static_cast<double>(m.config.inputs.size());
  const auto h = static_cast<double>(m.config.hidden_neurons);
  std::uniform_real_distribution<double> u1(-std::sqrt(6.0 / (d + h)), std::sqrt(6.0 / (d + h)));
  std::uniform_real_distribution<double> u2(-std::sqrt(6.0 / (h + 1.0)), std::sqrt(6.0 / (h + 1.0)));
  for (Eigen::Index i = 0; i < m.w1.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.w1.cols(); ++j) m.w1(i, j) = u1(rng);
  }
  for (Eigen::Index i = 0; i < m.w2.size(); ++i) m.w2(i) = u2(rng);
  m.b1.setZero();
  m.b2 = 0.0;
}

}  // namespace

MlpModel init(const MlpConfig& config) {
  config.validate();
  MlpModel m;
  m.config = config;
  const auto d = static_cast<Eigen::Index>(config.inputs.size());
  const auto h = static_cast<Eigen::Index>(config.hidden_neurons);
  m.w1.resize(h, d);
  m.b1.resize(h);
  m.w2.resize(h);
  m.input_scaling.assign(config.inputs.size(), Scaling::identity());
  std::mt19937_64 rng(config.seed);
  glorot(m, rng);
  return m;
}

Eigen::VectorXd forward_batch(const MlpModel& m, const Eigen::MatrixXd& x) {
  if (x.cols() != m.inputs()) throw Error(ErrorCode::DimensionMismatch, "input width does not match the model");
  const Eigen::MatrixXd z = (x * m.w1.transpose()).rowwise() + m.b1.transpose();
  const Eigen::MatrixXd hidden = activate(m.config.activation, z.array()).matrix();
  return (hidden * m.w2).array() + m.b2;
}

double forward(const MlpModel& m, std::span<const double> x) {
  if (static_cast<Eigen::Index>(x.size()) != m.inputs()) {
    throw Error(ErrorCode::DimensionMismatch, "input width does not match the model");
  }
  const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::VectorXd z = m.w1 * v + m.b1;
  const Eigen::VectorXd hidden = activate(m.config.activation, z.array()).matrix();
  return m.w2.dot(hidden) + m.b2;
}

LossAndGradient loss_and_gradient(const MlpModel& m, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() == 0) throw Error(ErrorCode::EmptyBatch, "loss over an empty batch");
  if (x.cols() != m.inputs() || y.size() != x.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "batch shape does not match the model");
  }
  const double n = static_cast<double>(x.rows());
  const Eigen::MatrixXd z = (x * m.w1.transpose()).rowwise() + m.b1.transpose();
  const Eigen::ArrayXXd hidden = activate(m.config.activation, z.array());
  const Eigen::VectorXd residual = ((hidden.matrix() * m.w2).array() + m.b2).matrix() - y;

  LossAndGradient out;
  out.loss = residual.squaredNorm() / n;
  const Eigen::VectorXd dy = (2.0 / n) * residual;
  out.grad.b2 = dy.sum();
  out.grad.w2 = hidden.matrix().transpose() * dy;
  // dL/dz = dy * w2^T, elementwise times act'(z)
  const Eigen::MatrixXd dz =
      ((dy * m.w2.transpose()).array() * activate_grad(m.config.activation, hidden)).matrix();
  out.grad.w1 = dz.transpose() * x;
  out.grad.b1 = dz.colwise().sum().transpose();
  return out;
}

Eigen::VectorXd flatten(const MlpModel& m) {
  const Eigen::Index h = m.hidden();
  const Eigen::Index d = m.inputs();
  Eigen::VectorXd p(h * d + h + h + 1);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) p(k++) = m.w1(i, j);
  }
  p.segment(k, h) = m.b1;
  k += h;
  p.segment(k, h) = m.w2;
  k += h;
  p(k) = m.b2;
  return p;
}

Eigen::VectorXd flatten(const Gradients& g) {
  MlpModel shell;
  shell.w1 = g.w1;
  shell.b1 = g.b1;
  shell.w2 = g.w2;
  shell.b2 = g.b2;
  return flatten(shell);
}

void unflatten(MlpModel& m, const Eigen::VectorXd& p) {
  const Eigen::Index h = m.hidden();
  const Eigen::Index d = m.inputs();
  if (p.size() != h * d + 2 * h + 1) throw Error(ErrorCode::DimensionMismatch, "parameter vector length");
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m.w1(i, j) = p(k++);
  }
  m.b1 = p.segment(k, h);
  k += h;
  m.w2 = p.segment(k, h);
  k += h;
  m.b2 = p(k);
}

namespace {

double mse_on(const MlpModel& m, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() == 0) return 0.0;
  return (forward_batch(m, x) - y).squaredNorm() / static_cast<double>(x.rows());
}

void sgd_step(MlpModel& m, const Gradients& g, double lr) {
  m.w1 -= lr * g.w1;
  m.b1 -= lr * g.b1;
  m.w2 -= lr * g.w2;
  m.b2 -= lr * g.b2;
}

}  // namespace

TrainResult train(const MlpConfig& config, const FeatureMatrix& data) {
  config.validate();
  if (data.columns != config.inputs) {
    throw Error(ErrorCode::DimensionMismatch, config.name + ": feature matrix columns differ from the config inputs");
  }
  if (!data.has_targets() || !data.target_scaling) {
    throw Error(ErrorCode::MissingTarget, config.name + ": training needs RUL targets");
  }
  const auto train_rows = data.rows_with(SplitLabel::Train);
  if (train_rows.empty()) throw Error(ErrorCode::EmptySplit, config.name + ": no training rows");
  const auto val_rows = data.rows_with(SplitLabel::Validation);
  const Eigen::MatrixXd xt = data.select_x(train_rows);
  const Eigen::VectorXd yt = data.select_y(train_rows);
  const Eigen::MatrixXd xv = data.select_x(val_rows);
  const Eigen::VectorXd yv = data.select_y(val_rows);
  const bool has_val = !val_rows.empty();

  const auto n = static_cast<std::size_t>(xt.rows());
  const std::size_t batch =
      config.batch_size == 0 ? n : std::min(n, static_cast<std::size_t>(config.batch_size));

  TrainResult best;
  double best_val = std::numeric_limits<double>::infinity();
  int best_restart = -1;
  for (int restart = 0; restart < config.restarts; ++restart) {
    MlpConfig run_config = config;
    run_config.seed = config.seed + static_cast<std::uint64_t>(restart);
    MlpModel model = init(run_config);
    model.config = config;
    model.input_scaling = data.scaling;
    model.target_scaling = *data.target_scaling;
    std::mt19937_64 rng(run_config.seed ^ 0x9E3779B97F4A7C15ULL);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<EpochLoss> history;
    history.reserve(static_cast<std::size_t>(config.epochs));

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      if (batch < n) std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t start = 0; start < n; start += batch) {
        const std::size_t len = std::min(batch, n - start);
        if (len == n) {
          sgd_step(model, loss_and_gradient(model, xt, yt).grad, config.learning_rate);
          continue;
        }
        Eigen::MatrixXd bx(static_cast<Eigen::Index>(len), xt.cols());
        Eigen::VectorXd by(static_cast<Eigen::Index>(len));
        for (std::size_t i = 0; i < len; ++i) {
          bx.row(static_cast<Eigen::Index>(i)) = xt.row(static_cast<Eigen::Index>(order[start + i]));
          by(static_cast<Eigen::Index>(i)) = yt(static_cast<Eigen::Index>(order[start + i]));
        }
        sgd_step(model, loss_and_gradient(model, bx, by).grad, config.learning_rate);
      }
      if (!model.all_finite()) {
        throw Error(ErrorCode::InvalidConfig, config.name + ": training diverged; lower the learning rate");
      }
      EpochLoss loss;
      loss.train = mse_on(model, xt, yt);
      loss.validation = has_val ? mse_on(model, xv, yv) : loss.train;
      history.push_back(loss);
      if (loss.validation < best_val) {
        best_val = loss.validation;
        best.model = model;
        best.best_epoch = epoch;
        best_restart = restart;
      }
    }
    if (best_restart == restart) best.history = std::move(history);
  }
  best.model.trained = true;
  return best;
}

double predict(const MlpModel& m, const PipeRecord& rec) {
  std::vector<double> x(m.config.inputs.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = m.input_scaling[j].normalize(feature_value(rec, m.config.inputs[j]));
  }
  return m.target_scaling.denormalize(forward(m, x));
}

}  // namespace pipelife::mlp
