#include "pipelife/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pipelife/error.hpp"

namespace pipelife {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "pipelife-model";

json header(const char* kind) {
  return json{{"format", kFormat}, {"version", kModelFormatVersion}, {"kind", kind}};
}

json scaling_json(const Scaling& s) {
  return json{{"mode", s.mode == NormalizationMode::MinMax ? "minmax" : "zscore"}, {"a", s.a}, {"b", s.b}};
}

Scaling scaling_from(const json& j) {
  Scaling s;
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "minmax") {
    s.mode = NormalizationMode::MinMax;
  } else if (mode == "zscore") {
    s.mode = NormalizationMode::ZScore;
  } else {
    throw Error(ErrorCode::InvalidModelDocument, "unknown scaling mode '" + mode + "'");
  }
  s.a = j.at("a").get<double>();
  s.b = j.at("b").get<double>();
  return s;
}

json features_json(const std::vector<Feature>& fs) {
  json out = json::array();
  for (Feature f : fs) out.push_back(std::string(feature_name(f)));
  return out;
}

std::vector<Feature> features_from(const json& j) {
  std::vector<Feature> out;
  for (const auto& name : j) out.push_back(parse_feature(name.get<std::string>()));
  return out;
}

json vector_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.begin(), v.end())); }

Eigen::VectorXd vector_from(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i).transpose()));
  return rows;
}

Eigen::MatrixXd matrix_from(const json& j, Eigen::Index cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto row = j[i].get<std::vector<double>>();
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::InvalidModelDocument, "ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(i), c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

std::vector<Scaling> scalings_from(const json& j) {
  std::vector<Scaling> out;
  for (const auto& s : j) out.push_back(scaling_from(s));
  return out;
}

json scalings_json(const std::vector<Scaling>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(scaling_json(s));
  return out;
}

mlp::MlpModel mlp_from(const json& j) {
  mlp::MlpModel m;
  const auto& c = j.at("config");
  m.config.name = c.at("name").get<std::string>();
  m.config.inputs = features_from(c.at("inputs"));
  m.config.hidden_neurons = c.at("hidden_neurons").get<int>();
  m.config.activation = mlp::parse_activation(c.at("activation").get<std::string>());
  m.config.learning_rate = c.at("learning_rate").get<double>();
  m.config.epochs = c.at("epochs").get<int>();
  m.config.batch_size = c.at("batch_size").get<int>();
  m.config.seed = c.at("seed").get<std::uint64_t>();
  m.config.restarts = c.at("restarts").get<int>();
  m.config.validate();
  const auto d = static_cast<Eigen::Index>(m.config.inputs.size());
  const auto h = static_cast<Eigen::Index>(m.config.hidden_neurons);
  m.w1 = matrix_from(j.at("w1"), d);
  m.b1 = vector_from(j.at("b1"));
  m.w2 = vector_from(j.at("w2"));
  m.b2 = j.at("b2").get<double>();
  if (m.w1.rows() != h || m.b1.size() != h || m.w2.size() != h) {
    throw Error(ErrorCode::InvalidModelDocument, "MLP weight shapes disagree with hidden_neurons");
  }
  m.input_scaling = scalings_from(j.at("input_scaling"));
  if (m.input_scaling.size() != m.config.inputs.size()) {
    throw Error(ErrorCode::InvalidModelDocument, "one input scaling per input is required");
  }
  m.target_scaling = scaling_from(j.at("target_scaling"));
  m.trained = j.at("trained").get<bool>();
  return m;
}

anfis::AnfisModel anfis_from(const json& j) {
  anfis::AnfisModel m;
  const auto inputs = features_from(j.at("inputs"));
  const int per_input = j.at("mfs_per_input").get<int>();
  if (per_input < 2 || inputs.empty()) throw Error(ErrorCode::InvalidModelDocument, "bad ANFIS shape");
  m.rulebase = anfis::RuleBase::grid(inputs, per_input);
  for (const auto& row : j.at("mfs")) {
    std::vector<anfis::GaussianMf> mfs;
    for (const auto& mf : row) mfs.push_back({mf.at("center").get<double>(), mf.at("sigma").get<double>()});
    if (static_cast<int>(mfs.size()) != per_input) {
      throw Error(ErrorCode::InvalidModelDocument, "MF count disagrees with mfs_per_input");
    }
    m.mfs.push_back(std::move(mfs));
  }
  if (m.mfs.size() != inputs.size()) throw Error(ErrorCode::InvalidModelDocument, "one MF row per input is required");
  m.consequents = matrix_from(j.at("consequents"), static_cast<Eigen::Index>(inputs.size() + 1));
  if (static_cast<std::size_t>(m.consequents.rows()) != m.rules()) {
    throw Error(ErrorCode::InvalidModelDocument, "one consequent row per rule is required");
  }
  m.input_scaling = scalings_from(j.at("input_scaling"));
  if (m.input_scaling.size() != inputs.size()) {
    throw Error(ErrorCode::InvalidModelDocument, "one input scaling per input is required");
  }
  m.target_scaling = scaling_from(j.at("target_scaling"));
  m.trained = j.at("trained").get<bool>();
  m.rank_deficient = j.value("rank_deficient", false);
  return m;
}

regression::DeteriorationModel deterioration_from(const json& j) {
  regression::DeteriorationModel m;
  m.material = regression::parse_material_class(j.at("material").get<std::string>());
  for (const auto& t : j.at("terms")) {
    m.terms.push_back({t.at("coefficient").get<double>(), t.at("age_power").get<int>(), t.at("wtl_power").get<int>()});
  }
  m.r2_fit = j.at("r2_fit").get<double>();
  m.degenerate = j.value("degenerate", false);
  m.validate();
  return m;
}

}  // namespace

std::string to_json(const mlp::MlpModel& m) {
  json j = header("mlp");
  j["config"] = {{"name", m.config.name},
                 {"inputs", features_json(m.config.inputs)},
                 {"hidden_neurons", m.config.hidden_neurons},
                 {"activation", std::string(mlp::to_string(m.config.activation))},
                 {"learning_rate", m.config.learning_rate},
                 {"epochs", m.config.epochs},
                 {"batch_size", m.config.batch_size},
                 {"seed", m.config.seed},
                 {"restarts", m.config.restarts}};
  j["w1"] = matrix_json(m.w1);
  j["b1"] = vector_json(m.b1);
  j["w2"] = vector_json(m.w2);
  j["b2"] = m.b2;
  j["input_scaling"] = scalings_json(m.input_scaling);
  j["target_scaling"] = scaling_json(m.target_scaling);
  j["trained"] = m.trained;
  return j.dump(2);
}

std::string to_json(const anfis::AnfisModel& m) {
  json j = header("anfis");
  j["inputs"] = features_json(m.rulebase.inputs);
  j["mfs_per_input"] = m.rulebase.mfs_per_input;
  json mfs = json::array();
  for (const auto& row : m.mfs) {
    json r = json::array();
    for (const auto& mf : row) r.push_back({{"center", mf.center}, {"sigma", mf.sigma}});
    mfs.push_back(std::move(r));
  }
  j["mfs"] = std::move(mfs);
  j["consequents"] = matrix_json(m.consequents);
  j["input_scaling"] = scalings_json(m.input_scaling);
  j["target_scaling"] = scaling_json(m.target_scaling);
  j["trained"] = m.trained;
  j["rank_deficient"] = m.rank_deficient;
  return j.dump(2);
}

std::string to_json(const regression::DeteriorationModel& m) {
  json j = header("deterioration");
  j["material"] = std::string(regression::to_string(m.material));
  json terms = json::array();
  for (const auto& t : m.terms) {
    terms.push_back({{"coefficient", t.coefficient}, {"age_power", t.age_power}, {"wtl_power", t.wtl_power}});
  }
  j["terms"] = std::move(terms);
  j["r2_fit"] = m.r2_fit;
  j["degenerate"] = m.degenerate;
  j["formula"] = m.formula();
  return j.dump(2);
}

AnyModel model_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (!j.is_object() || j.value("format", "") != kFormat) {
      throw Error(ErrorCode::InvalidModelDocument, "not a pipelife model document");
    }
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw Error(ErrorCode::InvalidModelDocument,
                  "unsupported model format version " + std::to_string(version));
    }
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "mlp") return mlp_from(j);
    if (kind == "anfis") return anfis_from(j);
    if (kind == "deterioration") return deterioration_from(j);
    throw Error(ErrorCode::InvalidModelDocument, "unknown model kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidModelDocument, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidModelDocument) throw;
    throw Error(ErrorCode::InvalidModelDocument, e.what());
  }
}

AnyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

void save_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::FileUnreadable, "cannot write " + path.string());
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
  if (!out) throw Error(ErrorCode::FileUnreadable, "write failed for " + path.string());
}

}  // namespace pipelife
