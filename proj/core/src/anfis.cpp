#include "pipelife/anfis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "pipelife/error.hpp"
#include "pipelife/least_squares.hpp"

namespace pipelife::anfis {

double GaussianMf::operator()(double x) const noexcept {
  const double d = x - center;
  return std::exp(-(d * d) / (2.0 * sigma * sigma));
}

RuleBase RuleBase::grid(std::vector<Feature> inputs, int mfs_per_input) {
  RuleBase rb;
  rb.inputs = std::move(inputs);
  rb.mfs_per_input = mfs_per_input;
  const std::size_t d = rb.inputs.size();
  std::size_t count = 1;
  for (std::size_t j = 0; j < d; ++j) count *= static_cast<std::size_t>(mfs_per_input);
  rb.rules.reserve(count);
  std::vector<int> digits(d, 0);
  for (std::size_t r = 0; r < count; ++r) {
    rb.rules.push_back(digits);
    for (std::size_t j = d; j-- > 0;) {
      if (++digits[j] < mfs_per_input) break;
      digits[j] = 0;
    }
  }
  return rb;
}

bool AnfisModel::all_finite() const noexcept {
  for (const auto& row : mfs) {
    for (const auto& mf : row) {
      if (!std::isfinite(mf.center) || !std::isfinite(mf.sigma)) return false;
    }
  }
  return consequents.allFinite();
}

AnfisModel init_grid(const std::vector<Feature>& inputs, int mfs_per_input, const FeatureMatrix& data, int rule_cap) {
  if (mfs_per_input < 2) throw Error(ErrorCode::TooFewMfs, "grid partition needs at least two MFs per input");
  if (inputs.empty()) throw Error(ErrorCode::UnknownColumn, "no ANFIS inputs given");
  double rules = 1.0;
  for (std::size_t j = 0; j < inputs.size(); ++j) rules *= mfs_per_input;
  if (rules > rule_cap) {
    throw Error(ErrorCode::RuleExplosion,
                fmt::format("{} MFs over {} inputs gives {} rules, above the cap of {}; use fewer inputs, fewer MFs "
                            "or a higher cap",
                            mfs_per_input, inputs.size(), rules, rule_cap));
  }
  AnfisModel m;
  m.rulebase = RuleBase::grid(inputs, mfs_per_input);
  for (Feature f : inputs) {
    const auto it = std::find(data.columns.begin(), data.columns.end(), f);
    if (it == data.columns.end()) {
      throw Error(ErrorCode::UnknownColumn, "input '" + std::string(feature_name(f)) + "' is not in the feature matrix");
    }
    const auto col = static_cast<Eigen::Index>(it - data.columns.begin());
    double lo = data.rows() > 0 ? data.x.col(col).minCoeff() : 0.0;
    double hi = data.rows() > 0 ? data.x.col(col).maxCoeff() : 1.0;
    double spacing = (hi - lo) / (mfs_per_input - 1);
    if (!(spacing > 0.0)) {
      spacing = 1.0;
      lo -= 0.5 * (mfs_per_input - 1);
    }
    std::vector<GaussianMf> row;
    for (int k = 0; k < mfs_per_input; ++k) {
      row.push_back({lo + k * spacing, std::max(spacing / std::sqrt(2.0), kSigmaFloor)});
    }
    m.mfs.push_back(std::move(row));
    m.input_scaling.push_back(data.scaling[static_cast<std::size_t>(col)]);
  }
  m.consequents = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.rules()), static_cast<Eigen::Index>(inputs.size() + 1));
  if (data.target_scaling) m.target_scaling = *data.target_scaling;
  return m;
}

LayerTrace infer(const AnfisModel& m, std::span<const double> x) {
  const std::size_t d = m.inputs();
  if (x.size() != d) throw Error(ErrorCode::DimensionMismatch, "input width does not match the ANFIS model");
  const auto r_count = static_cast<Eigen::Index>(m.rules());
  LayerTrace t;
  std::size_t max_mfs = 0;
  for (const auto& row : m.mfs) max_mfs = std::max(max_mfs, row.size());
  t.membership = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(max_mfs));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < m.mfs[j].size(); ++k) {
      t.membership(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = m.mfs[j][k](x[j]);
    }
  }
  t.firing.resize(r_count);
  t.rule_output.resize(r_count);
  for (Eigen::Index r = 0; r < r_count; ++r) {
    const auto& rule = m.rulebase.rules[static_cast<std::size_t>(r)];
    double w = 1.0;
    double f = m.consequents(r, static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
      w *= t.membership(static_cast<Eigen::Index>(j), rule[j]);
      f += m.consequents(r, static_cast<Eigen::Index>(j)) * x[j];
    }
    t.firing(r) = w;
    t.rule_output(r) = f;
  }
  const double total = t.firing.sum();
  if (!(total >= kMinFiringSum)) throw Error(ErrorCode::AllRulesZero, "no rule fires for this input");
  t.normalized = t.firing / total;
  t.weighted = t.normalized.cwiseProduct(t.rule_output);
  t.output = t.weighted.sum();
  return t;
}

double predict_normalized(const AnfisModel& m, std::span<const double> x) { return infer(m, x).output; }

Eigen::VectorXd predict_batch(const AnfisModel& m, const Eigen::MatrixXd& x) {
  Eigen::VectorXd out(x.rows());
  std::vector<double> row(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) row[static_cast<std::size_t>(j)] = x(i, j);
    out(i) = predict_normalized(m, row);
  }
  return out;
}

double predict(const AnfisModel& m, const PipeRecord& rec) {
  std::vector<double> x(m.inputs());
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = m.input_scaling[j].normalize(feature_value(rec, m.rulebase.inputs[j]));
  }
  return m.target_scaling.denormalize(predict_normalized(m, x));
}

namespace {

// Normalized firing strengths for every row (rows x rules).
Eigen::MatrixXd normalized_firing(const AnfisModel& m, const Eigen::MatrixXd& x) {
  const auto d = static_cast<Eigen::Index>(m.inputs());
  if (x.cols() != d) throw Error(ErrorCode::DimensionMismatch, "input width does not match the ANFIS model");
  const auto r_count = static_cast<Eigen::Index>(m.rules());
  Eigen::MatrixXd wbar(x.rows(), r_count);
  std::vector<std::vector<double>> mu(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      auto& row = mu[static_cast<std::size_t>(j)];
      row.resize(m.mfs[static_cast<std::size_t>(j)].size());
      for (std::size_t k = 0; k < row.size(); ++k) row[k] = m.mfs[static_cast<std::size_t>(j)][k](x(i, j));
    }
    double total = 0.0;
    for (Eigen::Index r = 0; r < r_count; ++r) {
      const auto& rule = m.rulebase.rules[static_cast<std::size_t>(r)];
      double w = 1.0;
      for (Eigen::Index j = 0; j < d; ++j) w *= mu[static_cast<std::size_t>(j)][static_cast<std::size_t>(rule[static_cast<std::size_t>(j)])];
      wbar(i, r) = w;
      total += w;
    }
    if (!(total >= kMinFiringSum)) throw Error(ErrorCode::AllRulesZero, fmt::format("no rule fires for row {}", i));
    wbar.row(i) /= total;
  }
  return wbar;
}

// Rule outputs f_r(x_i) for every row (rows x rules).
Eigen::MatrixXd rule_outputs(const AnfisModel& m, const Eigen::MatrixXd& x) {
  const auto d = static_cast<Eigen::Index>(m.inputs());
  const Eigen::MatrixXd coeffs = m.consequents.leftCols(d);
  return (x * coeffs.transpose()).rowwise() + m.consequents.col(d).transpose();
}

Eigen::VectorXd outputs(const AnfisModel& m, const Eigen::MatrixXd& x) {
  return normalized_firing(m, x).cwiseProduct(rule_outputs(m, x)).rowwise().sum();
}

}  // namespace

Eigen::MatrixXd consequent_design(const AnfisModel& m, const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd wbar = normalized_firing(m, x);
  const auto d = static_cast<Eigen::Index>(m.inputs());
  const auto r_count = static_cast<Eigen::Index>(m.rules());
  Eigen::MatrixXd phi(x.rows(), r_count * (d + 1));
  for (Eigen::Index r = 0; r < r_count; ++r) {
    const auto base = r * (d + 1);
    for (Eigen::Index j = 0; j < d; ++j) phi.col(base + j) = wbar.col(r).cwiseProduct(x.col(j));
    phi.col(base + d) = wbar.col(r);
  }
  return phi;
}

LseResult lse_consequents(const AnfisModel& m, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (y.size() != x.rows()) throw Error(ErrorCode::DimensionMismatch, "targets and rows differ in count");
  const auto d = static_cast<Eigen::Index>(m.inputs());
  const auto solved = solve_least_squares(consequent_design(m, x), y);
  LseResult out;
  out.rank_deficient = solved.rank_deficient;
  out.consequents.resize(static_cast<Eigen::Index>(m.rules()), d + 1);
  for (Eigen::Index r = 0; r < out.consequents.rows(); ++r) {
    out.consequents.row(r) = solved.theta.segment(r * (d + 1), d + 1).transpose();
  }
  return out;
}

double mse(const AnfisModel& m, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() == 0) return 0.0;
  return (outputs(m, x) - y).squaredNorm() / static_cast<double>(x.rows());
}

Eigen::VectorXd premise_parameters(const AnfisModel& m) {
  std::vector<double> centers;
  std::vector<double> sigmas;
  for (const auto& row : m.mfs) {
    for (const auto& mf : row) {
      centers.push_back(mf.center);
      sigmas.push_back(mf.sigma);
    }
  }
  Eigen::VectorXd p(static_cast<Eigen::Index>(centers.size() + sigmas.size()));
  for (std::size_t i = 0; i < centers.size(); ++i) p(static_cast<Eigen::Index>(i)) = centers[i];
  for (std::size_t i = 0; i < sigmas.size(); ++i) p(static_cast<Eigen::Index>(centers.size() + i)) = sigmas[i];
  return p;
}

void set_premise_parameters(AnfisModel& m, const Eigen::VectorXd& p) {
  std::size_t count = 0;
  for (const auto& row : m.mfs) count += row.size();
  if (static_cast<std::size_t>(p.size()) != 2 * count) {
    throw Error(ErrorCode::DimensionMismatch, "premise parameter vector length");
  }
  Eigen::Index k = 0;
  for (auto& row : m.mfs) {
    for (auto& mf : row) {
      mf.center = p(k);
      mf.sigma = p(static_cast<Eigen::Index>(count) + k);
      ++k;
    }
  }
}

Eigen::VectorXd premise_gradient(const AnfisModel& m, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  const auto d = static_cast<std::size_t>(m.inputs());
  std::vector<std::size_t> offset(d + 1, 0);
  for (std::size_t j = 0; j < d; ++j) offset[j + 1] = offset[j] + m.mfs[j].size();
  const auto count = static_cast<Eigen::Index>(offset[d]);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 * count);
  if (x.rows() == 0) return grad;

  const Eigen::MatrixXd wbar = normalized_firing(m, x);
  const Eigen::MatrixXd f = rule_outputs(m, x);
  const double scale = 2.0 / static_cast<double>(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double yhat = wbar.row(i).dot(f.row(i));
    const double dl_dy = scale * (yhat - y(i));
    // dy/dw_r * w_r = wbar_r (f_r - yhat); each rule feeds the MFs it selects.
    for (Eigen::Index r = 0; r < wbar.cols(); ++r) {
      const double g = dl_dy * wbar(i, r) * (f(i, r) - yhat);
      if (g == 0.0) continue;
      const auto& rule = m.rulebase.rules[static_cast<std::size_t>(r)];
      for (std::size_t j = 0; j < d; ++j) {
        const auto k = static_cast<std::size_t>(rule[j]);
        const auto& mf = m.mfs[j][k];
        const double diff = x(i, static_cast<Eigen::Index>(j)) - mf.center;
        const double s2 = mf.sigma * mf.sigma;
        const auto idx = static_cast<Eigen::Index>(offset[j] + k);
        grad(idx) += g * diff / s2;
        grad(count + idx) += g * diff * diff / (s2 * mf.sigma);
      }
    }
  }
  return grad;
}

HybridResult hybrid_train(const AnfisModel& start, const FeatureMatrix& data, int epochs, double learning_rate) {
  if (!data.has_targets()) throw Error(ErrorCode::MissingTarget, "hybrid training needs RUL targets");
  if (epochs < 0) throw Error(ErrorCode::InvalidConfig, "epochs must be >= 0");
  if (!(learning_rate >= 0.0)) throw Error(ErrorCode::InvalidConfig, "learning rate must be >= 0");
  std::vector<Eigen::Index> cols;
  for (Feature f : start.rulebase.inputs) {
    const auto it = std::find(data.columns.begin(), data.columns.end(), f);
    if (it == data.columns.end()) {
      throw Error(ErrorCode::DimensionMismatch, "input '" + std::string(feature_name(f)) + "' is not in the feature matrix");
    }
    cols.push_back(static_cast<Eigen::Index>(it - data.columns.begin()));
  }
  auto project = [&](const std::vector<Eigen::Index>& rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = data.x(rows[i], cols[j]);
      }
    }
    return out;
  };
  const auto train_rows = data.rows_with(SplitLabel::Train);
  if (train_rows.empty()) throw Error(ErrorCode::EmptySplit, "no training rows");
  const auto val_rows = data.rows_with(SplitLabel::Validation);
  const Eigen::MatrixXd xt = project(train_rows);
  const Eigen::VectorXd yt = data.select_y(train_rows);
  const Eigen::MatrixXd xv = project(val_rows);
  const Eigen::VectorXd yv = data.select_y(val_rows);

  AnfisModel model = start;
  model.log.clear();
  {
    auto lse = lse_consequents(model, xt, yt);
    model.consequents = std::move(lse.consequents);
    model.rank_deficient = lse.rank_deficient;
  }
  HybridResult result;
  result.model = model;
  double best = std::numeric_limits<double>::infinity();
  for (int epoch = 0; epoch < epochs; ++epoch) {
    EpochLog entry;
    entry.rmse_before_lse = std::sqrt(mse(model, xt, yt));
    auto lse = lse_consequents(model, xt, yt);
    model.consequents = std::move(lse.consequents);
    model.rank_deficient = lse.rank_deficient;
    entry.train_rmse = std::sqrt(mse(model, xt, yt));
    entry.validation_rmse = val_rows.empty() ? entry.train_rmse : std::sqrt(mse(model, xv, yv));
    model.log.push_back(entry);
    if (entry.validation_rmse < best) {
      best = entry.validation_rmse;
      result.model = model;
      result.best_epoch = epoch;
    }
    if (learning_rate > 0.0) {
      const Eigen::VectorXd p0 = premise_parameters(model);
      const Eigen::VectorXd grad = premise_gradient(model, xt, yt);
      const double current = entry.train_rmse * entry.train_rmse;
      const Eigen::Index half = p0.size() / 2;
      double step = learning_rate;
      bool accepted = false;
      for (int halving = 0; halving < kMaxStepHalvings && !accepted; ++halving, step *= 0.5) {
        Eigen::VectorXd p = p0 - step * grad;
        p.tail(half) = p.tail(half).cwiseMax(kSigmaFloor);
        if (!p.allFinite()) continue;
        set_premise_parameters(model, p);
        try {
          accepted = mse(model, xt, yt) <= current;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::AllRulesZero) throw;
        }
      }
      if (!accepted) set_premise_parameters(model, p0);
    }
  }
  result.log = model.log;
  result.model.log = model.log;
  result.model.trained = true;
  return result;
}

}  // namespace pipelife::anfis
