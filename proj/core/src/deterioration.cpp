#include "pipelife/deterioration.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "pipelife/error.hpp"
#include "pipelife/least_squares.hpp"

namespace pipelife::regression {

std::string_view to_string(MaterialClass c) noexcept {
  switch (c) {
    case MaterialClass::CI: return "CI";
    case MaterialClass::DI: return "DI";
    case MaterialClass::AC: return "AC";
    case MaterialClass::Steel: return "Steel";
    case MaterialClass::Custom: return "Custom";
  }
  return "Custom";
}

MaterialClass parse_material_class(std::string_view s) {
  std::string key;
  for (char c : s) {
    if (c == ' ' || c == '-' || c == '_') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "ci" || key == "castiron") return MaterialClass::CI;
  if (key == "di" || key == "ductileiron") return MaterialClass::DI;
  if (key == "ac" || key == "asbestos" || key == "asbestoscement") return MaterialClass::AC;
  if (key == "steel") return MaterialClass::Steel;
  if (key == "custom") return MaterialClass::Custom;
  throw Error(ErrorCode::UnsupportedMaterial, "unknown material class '" + std::string(s) + "'");
}

MaterialClass material_class(MaterialKind kind) noexcept {
  switch (kind) {
    case MaterialKind::CastIron: return MaterialClass::CI;
    case MaterialKind::DuctileIron: return MaterialClass::DI;
    case MaterialKind::Asbestos: return MaterialClass::AC;
    case MaterialKind::Steel: return MaterialClass::Steel;
    default: return MaterialClass::Custom;
  }
}

void DeteriorationModel::validate() const {
  if (terms.empty()) throw Error(ErrorCode::InvalidConfig, "deterioration model has no terms");
  for (const auto& t : terms) {
    if (t.age_power < 0 || t.wtl_power < 0) throw Error(ErrorCode::InvalidConfig, "negative exponent");
    if (t.degree() > kMaxDegree) {
      throw Error(ErrorCode::InvalidConfig, fmt::format("term degree {} exceeds {}", t.degree(), kMaxDegree));
    }
    if (!std::isfinite(t.coefficient)) throw Error(ErrorCode::InvalidConfig, "non-finite coefficient");
  }
}

namespace {

std::string power(char var, int p) {
  if (p == 0) return "";
  if (p == 1) return std::string(1, var);
  return fmt::format("{}^{}", var, p);
}

double evaluate(const DeteriorationModel& m, double age, double wtl) {
  double y = 0.0;
  for (const auto& t : m.terms) y += t.coefficient * std::pow(age, t.age_power) * std::pow(wtl, t.wtl_power);
  return y;
}

}  // namespace

std::string DeteriorationModel::formula() const {
  std::string out = "Y =";
  bool first = true;
  for (const auto& t : terms) {
    const double mag = std::abs(t.coefficient);
    const std::string vars = power('A', t.age_power) + power('W', t.wtl_power);
    const std::string body = fmt::format("{}{}", mag, vars);
    if (first) {
      out += t.coefficient < 0 ? " -" + body : " " + body;
      first = false;
    } else {
      out += (t.coefficient < 0 ? " - " : " + ") + body;
    }
  }
  return out;
}

DeteriorationModel builtin(MaterialClass material) {
  DeteriorationModel m;
  m.material = material;
  switch (material) {
    case MaterialClass::CI:
      m.terms = {{-0.342, 2, 0}, {0.0548, 0, 1}, {48.163, 0, 0}};
      m.r2_fit = 0.78;
      break;
    case MaterialClass::DI:
      m.terms = {{0.004, 3, 0}, {-0.025, 0, 2}, {0.11, 1, 1}, {51.0, 0, 0}};
      m.r2_fit = 0.74;
      break;
    case MaterialClass::AC:
      m.terms = {{0.0038, 2, 0}, {-0.49, 0, 1}, {195.92, 0, 0}};
      m.r2_fit = 0.80;
      break;
    case MaterialClass::Steel:
      m.terms = {{0.005, 3, 0}, {-0.012, 0, 2}, {-0.989, 1, 1}, {-0.012, 0, 0}};
      m.r2_fit = 0.73;
      break;
    case MaterialClass::Custom:
      throw Error(ErrorCode::UnsupportedMaterial, "no built-in model for a custom material; fit one instead");
  }
  return m;
}

RulPrediction predict_rul(const DeteriorationModel& m, double age, double wtl) {
  if (!(age >= 0.0) || !std::isfinite(age)) throw Error(ErrorCode::OutOfDomain, fmt::format("age {} < 0", age));
  if (!(wtl >= 0.0 && wtl <= 100.0)) {
    throw Error(ErrorCode::OutOfDomain, fmt::format("wall thickness loss {} outside [0, 100]", wtl));
  }
  RulPrediction p;
  p.raw = evaluate(m, age, wtl);
  p.clamped = std::max(p.raw, 0.0);
  return p;
}

std::vector<std::pair<int, int>> monomial_basis(int degree) {
  if (degree < 0 || degree > kMaxDegree) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("degree must be in 1..{}", kMaxDegree));
  }
  std::vector<std::pair<int, int>> out;
  for (int total = 0; total <= degree; ++total) {
    for (int a = total; a >= 0; --a) out.emplace_back(a, total - a);
  }
  return out;
}

namespace {

struct ScaledProblem {
  Eigen::MatrixXd columns;  // every basis term, scaled inputs
  Eigen::VectorXd y;
  double sa = 1.0;
  double sw = 1.0;
};

double r2_of(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted) {
  const double sst = (y.array() - y.mean()).square().sum();
  const double sse = (y - fitted).squaredNorm();
  if (sst == 0.0) return sse == 0.0 ? 1.0 : 0.0;
  return 1.0 - sse / sst;
}

struct SubsetFit {
  Eigen::VectorXd theta;
  double r2 = 0.0;
  bool rank_deficient = false;
};

SubsetFit fit_subset(const ScaledProblem& p, const std::vector<std::size_t>& subset) {
  Eigen::MatrixXd design(p.columns.rows(), static_cast<Eigen::Index>(subset.size()));
  for (std::size_t k = 0; k < subset.size(); ++k) {
    design.col(static_cast<Eigen::Index>(k)) = p.columns.col(static_cast<Eigen::Index>(subset[k]));
  }
  const auto solved = solve_least_squares(design, p.y);
  return {solved.theta, r2_of(p.y, design * solved.theta), solved.rank_deficient};
}

}  // namespace

DeteriorationModel fit_polynomial(std::span<const Observation> data, int degree, TermSelection selection,
                                  MaterialClass tag) {
  if (degree < 1 || degree > kMaxDegree) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("degree {} outside 1..{}", degree, kMaxDegree));
  }
  const auto basis = monomial_basis(degree);
  if (data.size() < basis.size()) {
    throw Error(ErrorCode::Underdetermined,
                fmt::format("{} observations for {} polynomial terms", data.size(), basis.size()));
  }
  DeteriorationModel model;
  model.material = tag;

  ScaledProblem p;
  const auto n = static_cast<Eigen::Index>(data.size());
  p.y.resize(n);
  double max_a = 0.0;
  double max_w = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& o = data[static_cast<std::size_t>(i)];
    p.y(i) = o.rul;
    max_a = std::max(max_a, std::abs(o.age));
    max_w = std::max(max_w, std::abs(o.wtl));
  }
  if (max_a > 0.0) p.sa = max_a;
  if (max_w > 0.0) p.sw = max_w;

  if ((p.y.array() == p.y(0)).all()) {
    model.terms = {{p.y(0), 0, 0}};
    model.r2_fit = 1.0;
    model.degenerate = true;
    return model;
  }

  p.columns.resize(n, static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& o = data[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < basis.size(); ++k) {
      p.columns(i, static_cast<Eigen::Index>(k)) =
          std::pow(o.age / p.sa, basis[k].first) * std::pow(o.wtl / p.sw, basis[k].second);
    }
  }

  std::vector<std::size_t> chosen;
  SubsetFit fit;
  if (selection == TermSelection::Full) {
    chosen.resize(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) chosen[k] = k;
    fit = fit_subset(p, chosen);
  } else {
    chosen = {0};
    fit = fit_subset(p, chosen);
    for (;;) {
      std::size_t best_k = basis.size();
      SubsetFit best_fit;
      for (std::size_t k = 1; k < basis.size(); ++k) {
        if (std::find(chosen.begin(), chosen.end(), k) != chosen.end()) continue;
        auto trial = chosen;
        trial.push_back(k);
        auto f = fit_subset(p, trial);
        if (best_k == basis.size() || f.r2 > best_fit.r2) {
          best_k = k;
          best_fit = std::move(f);
        }
      }
      if (best_k == basis.size() || best_fit.r2 - fit.r2 < kGreedyMinGain) break;
      chosen.push_back(best_k);
      fit = std::move(best_fit);
    }
    // Report terms in basis order.
    std::vector<std::size_t> order(chosen.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return chosen[a] < chosen[b]; });
    std::vector<std::size_t> sorted_terms;
    Eigen::VectorXd sorted_theta(fit.theta.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      sorted_terms.push_back(chosen[order[k]]);
      sorted_theta(static_cast<Eigen::Index>(k)) = fit.theta(static_cast<Eigen::Index>(order[k]));
    }
    chosen = std::move(sorted_terms);
    fit.theta = std::move(sorted_theta);
  }

  for (std::size_t k = 0; k < chosen.size(); ++k) {
    const auto [a, w] = basis[chosen[k]];
    const double c = fit.theta(static_cast<Eigen::Index>(k)) / (std::pow(p.sa, a) * std::pow(p.sw, w));
    model.terms.push_back({c, a, w});
  }
  model.r2_fit = fit.r2;
  model.degenerate = fit.rank_deficient;
  return model;
}

double halflife_check(const DeteriorationModel& m, double age, double wtl0, double delta_wtl) {
  const double base = predict_rul(m, age, wtl0).raw;
  if (!(base > 0.0)) {
    throw Error(ErrorCode::NonpositiveBaseline, fmt::format("RUL at age {}, WTL {} is {} (not positive)", age, wtl0, base));
  }
  const double shifted = predict_rul(m, age, wtl0 + delta_wtl).raw;
  return (base - shifted) / base;
}

namespace {

double median(std::vector<double> v) {
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

RepresentativePoint representative_point(std::span<const Observation> data) {
  if (data.empty()) throw Error(ErrorCode::EmptyDataset, "no observations");
  std::vector<double> ages;
  std::vector<double> wtls;
  for (const auto& o : data) {
    ages.push_back(o.age);
    wtls.push_back(o.wtl);
  }
  return {median(std::move(ages)), median(std::move(wtls))};
}

double r_squared(const DeteriorationModel& m, std::span<const Observation> data) {
  if (data.empty()) throw Error(ErrorCode::EmptyDataset, "no observations");
  Eigen::VectorXd y(static_cast<Eigen::Index>(data.size()));
  Eigen::VectorXd f(y.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    y(static_cast<Eigen::Index>(i)) = data[i].rul;
    f(static_cast<Eigen::Index>(i)) = evaluate(m, data[i].age, data[i].wtl);
  }
  return r2_of(y, f);
}

}  // namespace pipelife::regression
