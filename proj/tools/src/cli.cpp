#include "pipelife/cli.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "manifest.hpp"
#include "pipelife/anfis.hpp"
#include "pipelife/csv.hpp"
#include "pipelife/deterioration.hpp"
#include "pipelife/error.hpp"
#include "pipelife/experiment.hpp"
#include "pipelife/metrics.hpp"
#include "pipelife/sensitivity.hpp"
#include "pipelife/serialize.hpp"
#include "pipelife/stats.hpp"
#include "pipelife/synth.hpp"

namespace pipelife::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 42;
constexpr const char* kDefaultAnfisInputs = "age,wtl,install_year";

struct GenerateArgs {
  std::size_t n = 5000;
  std::uint64_t seed = kDefaultSeed;
  int reference_year = 2012;
  std::string out;
  std::string moments_json;
};

struct StatsArgs {
  std::string in;
  int reference_year = 2012;
  int bins = 4;
  bool json = false;
};

struct TrainAnnArgs {
  std::string in;
  std::uint64_t seed = kDefaultSeed;
  int reference_year = 2012;
  std::string registry;
  std::string out_dir;
  int epochs = 0;  // 0 keeps each registry entry's own value
};

struct TrainAnfisArgs {
  std::string in;
  std::string inputs = kDefaultAnfisInputs;
  int mfs = 2;
  int epochs = 30;
  double learning_rate = 0.05;
  int rule_cap = anfis::kDefaultRuleCap;
  int resolution = 25;
  std::uint64_t seed = kDefaultSeed;
  int reference_year = 2012;
  std::string out_dir;
};

struct PredictArgs {
  std::string model;
  std::string builtin;
  std::string in;
  std::string out;
  int reference_year = 2012;
};

struct FitRegressionArgs {
  std::string in;
  int degree = 3;
  bool greedy = false;
  int reference_year = 2012;
  std::string out_dir;
};

// Every long option of a subcommand with its effective value.
json config_snapshot(const CLI::App& sub) {
  json out = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty() || names.front() == "help" || names.front() == "config" || names.front() == "manifest") continue;
    const auto& name = names.front();
    if (opt->get_type_size() == 0) {
      out[name] = opt->count() > 0 && opt->as<bool>();
    } else if (opt->count() > 0) {
      const auto& r = opt->results();
      out[name] = r.size() == 1 ? json(r.front()) : json(r);
    } else {
      out[name] = opt->get_default_str();
    }
  }
  return out;
}

void write_file(const fs::path& path, const std::string& text, RunManifest& manifest) {
  save_text(path, text);
  manifest.add_output(path);
}

Dataset read_dataset(const std::string& path, int reference_year, RunManifest& manifest, std::ostream& err) {
  auto ingest = ingest_csv(path, reference_year);
  manifest.add_input(path);
  if (ingest.report.rows_dropped > 0) err << ingest.report.to_text();
  return std::move(ingest.dataset);
}

struct PhaseRow {
  std::string phase;
  MetricsReport metrics;
};

std::vector<PhaseRow> phase_metrics(const Dataset& d, const std::function<double(const PipeRecord&)>& predict) {
  constexpr std::pair<SplitLabel, const char*> kPhases[] = {
      {SplitLabel::Train, "train"}, {SplitLabel::Validation, "validation"}, {SplitLabel::Test, "test"}};
  std::vector<PhaseRow> rows;
  auto collect = [&](const std::vector<std::size_t>& idx, const char* phase) {
    if (idx.size() < 2) return;
    std::vector<double> pred;
    std::vector<double> actual;
    for (std::size_t i : idx) {
      pred.push_back(predict(d.records[i]));
      actual.push_back(*d.records[i].rul);
    }
    rows.push_back({phase, evaluate(pred, actual)});
  };
  if (d.has_split()) {
    for (const auto& [label, phase] : kPhases) collect(indices_with_label(d, label), phase);
  }
  std::vector<std::size_t> all(d.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  collect(all, "all");
  return rows;
}

std::string metrics_table(const std::vector<std::pair<std::string, PhaseRow>>& rows) {
  std::string out = fmt::format("{:<10}{:<12}{:>10}{:>10}{:>10}{:>10}{:>10}{:>10}\n", "model", "phase", "MAE", "RRSE",
                                "MAPE", "RAE", "R2", "RMSE");
  for (const auto& [model, row] : rows) {
    const auto& m = row.metrics;
    out += fmt::format("{:<10}{:<12}{:>10.4f}{:>10.4f}{:>10.4f}{:>10.4f}{:>10.4f}{:>10.4f}\n", model, row.phase, m.mae,
                       m.rrse, m.mape, m.rae, m.r2, m.rmse);
  }
  return out;
}

// ---- generate -------------------------------------------------------------

int cmd_generate(const GenerateArgs& a, RunManifest& manifest, std::ostream& out) {
  synth::GeneratorConfig config;
  config.n = a.n;
  config.seed = a.seed;
  config.reference_year = a.reference_year;
  manifest.add_seed("generator", a.seed);
  const Dataset d = synth::generate(config);
  if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
  write_csv(fs::path(a.out), d);
  manifest.add_output(a.out);
  const auto report = synth::moment_report(d);
  if (!a.moments_json.empty()) write_file(a.moments_json, report.to_json(), manifest);
  out << fmt::format("wrote {} records to {}\n", d.size(), a.out);
  out << report.to_text();
  return kExitOk;
}

// ---- stats ----------------------------------------------------------------

std::string significance_table(const stats::SignificanceReport& r) {
  std::string out = fmt::format("{:<26}{:>10}{:>12}{:>12}{:>10}{:>12}{:>14}\n", "feature", "pearson", "anova_F",
                                "anova_p", "t", "t_p", "significant");
  for (const auto& s : r.features) {
    out += fmt::format("{:<26}{:>10.4f}{:>12.4f}{:>12.4g}{:>10.4f}{:>12.4g}{:>14}\n", feature_name(s.feature),
                       s.pearson_r, s.anova_f, s.anova_p, s.t_stat, s.t_p, s.significant ? "yes" : "no");
  }
  return out;
}

int cmd_stats(const StatsArgs& a, RunManifest& manifest, std::ostream& out, std::ostream& err) {
  const Dataset d = read_dataset(a.in, a.reference_year, manifest, err);
  const auto summary = stats::summarize_dataset(d);
  std::optional<stats::SignificanceReport> significance;
  if (d.has_targets()) significance = stats::significance_report(d, a.bins);
  if (a.json) {
    json doc;
    json rows = json::array();
    for (const auto& row : summary) {
      rows.push_back({{"column", row.name},
                      {"n", row.stats.n},
                      {"min", row.stats.min},
                      {"max", row.stats.max},
                      {"mean", row.stats.mean},
                      {"std", row.stats.std},
                      {"mode", row.stats.mode}});
    }
    doc["summary"] = std::move(rows);
    doc["significance"] = significance ? json::parse(significance->to_json()) : json(nullptr);
    out << doc.dump(2) << '\n';
  } else {
    out << stats::render_summary_table(summary);
    if (significance) out << '\n' << significance_table(*significance);
  }
  return kExitOk;
}

// ---- train-ann ------------------------------------------------------------

std::vector<mlp::MlpConfig> load_registry(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileUnreadable, "cannot open registry " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("registry is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::InvalidConfig, "registry must be a JSON array of model entries");
  std::vector<mlp::MlpConfig> out;
  try {
    for (const auto& e : doc) {
      mlp::MlpConfig c;
      c.name = e.value("name", fmt::format("ANN{}", out.size() + 1));
      const auto& inputs = e.at("inputs");
      if (inputs.is_string()) {
        c.inputs = parse_feature_list(inputs.get<std::string>());
      } else {
        for (const auto& f : inputs) c.inputs.push_back(parse_feature(f.get<std::string>()));
      }
      c.hidden_neurons = e.value("hidden_neurons", c.hidden_neurons);
      c.activation = mlp::parse_activation(e.value("activation", std::string("sigmoid")));
      c.learning_rate = e.value("learning_rate", c.learning_rate);
      c.epochs = e.value("epochs", c.epochs);
      c.batch_size = e.value("batch_size", c.batch_size);
      c.restarts = e.value("restarts", c.restarts);
      c.seed = e.value("seed", seed);
      c.validate();
      out.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("bad registry entry: ") + e.what());
  }
  return out;
}

int cmd_train_ann(const TrainAnnArgs& a, RunManifest& manifest, std::ostream& out, std::ostream& err) {
  Dataset data = read_dataset(a.in, a.reference_year, manifest, err);
  if (!data.has_targets()) throw Error(ErrorCode::MissingTarget, "training needs a rul_years value on every row");
  manifest.add_seed("split", a.seed);
  manifest.add_seed("init", a.seed);
  data = split_dataset(std::move(data), SplitRatios{}, a.seed);

  std::vector<mlp::MlpConfig> registry;
  if (a.registry.empty()) {
    registry = mlp::default_registry(a.seed);
  } else {
    registry = load_registry(a.registry, a.seed);
    manifest.add_input(a.registry);
  }
  if (a.epochs > 0) {
    for (auto& c : registry) c.epochs = a.epochs;
  }

  const auto result = mlp::run_experiment_suite(data, registry);
  const fs::path dir(a.out_dir);
  write_file(dir / "metrics.csv", result.to_csv(), manifest);
  for (const auto& m : result.models) write_file(dir / "models" / (m.config.name + ".json"), to_json(m), manifest);
  const auto& best = result.models[result.best];
  write_file(dir / "best_model.json", to_json(best), manifest);

  const SplitLabel scatter_phase =
      indices_with_label(data, SplitLabel::Test).size() >= 2 ? SplitLabel::Test : SplitLabel::Train;
  const auto scatter = mlp::scatter_data(best, data, scatter_phase);
  std::string scatter_csv = "actual,predicted\n";
  for (std::size_t i = 0; i < scatter.actual.size(); ++i) {
    scatter_csv += format_number(scatter.actual[i]) + "," + format_number(scatter.predicted[i]) + "\n";
  }
  write_file(dir / "scatter.csv", scatter_csv, manifest);

  std::vector<std::pair<std::string, PhaseRow>> rows;
  for (const auto& r : result.rows) {
    if (r.phase == "test" || r.phase == "all") rows.push_back({r.model, {r.phase, r.metrics}});
  }
  out << metrics_table(rows);
  out << fmt::format("best model: {}\n", best.config.name);
  if (scatter.actual.size() >= 2) {
    const auto fit = mlp::scatter_fit(scatter.predicted, scatter.actual);
    out << fmt::format("{} fit: predicted = {:.4f} * actual + {:.4f}, R2 = {:.4f}\n", to_string(scatter_phase),
                       fit.slope, fit.intercept, fit.r2);
  }
  return kExitOk;
}

// ---- train-anfis ----------------------------------------------------------

int cmd_train_anfis(const TrainAnfisArgs& a, RunManifest& manifest, std::ostream& out, std::ostream& err) {
  const auto inputs = parse_feature_list(a.inputs);
  Dataset data = read_dataset(a.in, a.reference_year, manifest, err);
  if (!data.has_targets()) throw Error(ErrorCode::MissingTarget, "training needs a rul_years value on every row");
  manifest.add_seed("split", a.seed);
  data = split_dataset(std::move(data), SplitRatios{}, a.seed);
  const auto fm = build_features(data, inputs, NormalizationMode::MinMax);
  const auto start = anfis::init_grid(inputs, a.mfs, fm, a.rule_cap);
  const auto trained = anfis::hybrid_train(start, fm, a.epochs, a.learning_rate);
  const auto& model = trained.model;

  const fs::path dir(a.out_dir);
  write_file(dir / "anfis_model.json", to_json(model), manifest);

  std::string log = "epoch,rmse_before_lse,train_rmse,validation_rmse\n";
  for (std::size_t e = 0; e < trained.log.size(); ++e) {
    const auto& l = trained.log[e];
    log += fmt::format("{},{},{},{}\n", e, format_number(l.rmse_before_lse), format_number(l.train_rmse),
                       format_number(l.validation_rmse));
  }
  write_file(dir / "rmse_log.csv", log, manifest);

  const auto ranking = sensitivity_ranking(model, fm);
  std::string sens = "rank,feature,slope\n";
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    sens += fmt::format("{},{},{}\n", r + 1, feature_name(ranking[r].feature), format_number(ranking[r].slope));
  }
  write_file(dir / "sensitivity.csv", sens, manifest);

  if (inputs.size() >= 2) {
    auto column_of = [&](Feature f) {
      return static_cast<Eigen::Index>(std::find(fm.columns.begin(), fm.columns.end(), f) - fm.columns.begin());
    };
    const Feature f1 = ranking[0].feature;
    const Feature f2 = ranking[1].feature;
    const auto grid = contour_grid([&](std::span<const double> x) { return anfis::predict_normalized(model, x); }, fm,
                                   column_of(f1), column_of(f2), a.resolution);
    std::string csv = fmt::format("{},{},{}\n", feature_name(f1), feature_name(f2), kPredictedRulColumn);
    for (const auto& p : grid) {
      csv += fmt::format("{},{},{}\n", format_number(p.x1), format_number(p.x2), format_number(p.y));
    }
    write_file(dir / "contour.csv", csv, manifest);
  }

  const auto phases = phase_metrics(data, [&](const PipeRecord& r) { return anfis::predict(model, r); });
  std::string metrics = "model,phase,mae,rrse,mape,rae,r2\n";
  std::vector<std::pair<std::string, PhaseRow>> rows;
  for (const auto& p : phases) {
    metrics += fmt::format("ANFIS,{},{},{},{},{},{}\n", p.phase, format_number(p.metrics.mae),
                           format_number(p.metrics.rrse), format_number(p.metrics.mape), format_number(p.metrics.rae),
                           format_number(p.metrics.r2));
    rows.push_back({"ANFIS", p});
  }
  write_file(dir / "metrics.csv", metrics, manifest);

  out << fmt::format("{} rules over {} inputs, best epoch {}\n", model.rules(), model.inputs(), trained.best_epoch);
  if (model.rank_deficient) out << "note: the last consequent solve was rank deficient\n";
  out << metrics_table(rows);
  out << "sensitivity ranking:\n";
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    out << fmt::format("  {}. {:<26} {:.6f}\n", r + 1, feature_name(ranking[r].feature), ranking[r].slope);
  }
  return kExitOk;
}

// ---- predict --------------------------------------------------------------

std::function<double(const PipeRecord&)> predictor(const AnyModel& model) {
  return std::visit(
      [](const auto& m) -> std::function<double(const PipeRecord&)> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, regression::DeteriorationModel>) {
          return [m](const PipeRecord& r) { return regression::predict_rul(m, r.age, r.wall_thickness_loss).clamped; };
        } else {
          return [m](const PipeRecord& r) { return predict(m, r); };
        }
      },
      model);
}

int cmd_predict(const PredictArgs& a, RunManifest& manifest, std::ostream& out, std::ostream& err) {
  AnyModel model;
  if (!a.model.empty()) {
    model = load_model(a.model);
    manifest.add_input(a.model);
  } else {
    model = regression::builtin(regression::parse_material_class(a.builtin));
  }
  const Dataset d = read_dataset(a.in, a.reference_year, manifest, err);
  const auto fn = predictor(model);
  std::vector<double> predictions;
  predictions.reserve(d.size());
  for (const auto& r : d.records) predictions.push_back(fn(r));

  if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
  {
    std::ofstream file(a.out);
    if (!file) throw Error(ErrorCode::FileUnreadable, "cannot write " + a.out);
    write_csv(file, d, kPredictedRulColumn, predictions);
  }
  manifest.add_output(a.out);
  out << fmt::format("wrote {} predictions to {}\n", predictions.size(), a.out);
  if (d.has_targets() && d.size() >= 2) {
    std::vector<double> actual;
    for (const auto& r : d.records) actual.push_back(*r.rul);
    try {
      const auto m = evaluate(predictions, actual);
      out << fmt::format("mae {}\nrmse {}\nmape {}\nr2 {}\n", format_number(m.mae), format_number(m.rmse),
                         format_number(m.mape), format_number(m.r2));
    } catch (const Error& e) {
      err << "metrics unavailable: " << e.what() << '\n';
    }
  }
  return kExitOk;
}

// ---- fit-regression -------------------------------------------------------

int cmd_fit_regression(const FitRegressionArgs& a, RunManifest& manifest, std::ostream& out, std::ostream& err) {
  const Dataset d = read_dataset(a.in, a.reference_year, manifest, err);
  if (!d.has_targets()) throw Error(ErrorCode::MissingTarget, "fitting needs a rul_years value on every row");
  std::map<regression::MaterialClass, std::vector<regression::Observation>> groups;
  for (const auto& r : d.records) {
    const auto c = regression::material_class(r.material.kind);
    if (c == regression::MaterialClass::Custom) continue;
    groups[c].push_back({static_cast<double>(r.age), r.wall_thickness_loss, *r.rul});
  }
  const auto selection = a.greedy ? regression::TermSelection::Greedy : regression::TermSelection::Full;

  std::string table = fmt::format("{:<8}{:>8}{:>10}{:>12}  {}\n", "material", "n", "R2", "halflife", "model");
  int fitted = 0;
  int failed = 0;
  for (const auto& [material, obs] : groups) {
    try {
      const auto m = regression::fit_polynomial(obs, a.degree, selection, material);
      std::string half = "n/a";
      const auto rep = regression::representative_point(obs);
      try {
        half = fmt::format("{:.4f}", regression::halflife_check(m, rep.age, rep.wtl, 10.0));
      } catch (const Error&) {
      }
      table += fmt::format("{:<8}{:>8}{:>10.4f}{:>12}  {}\n", regression::to_string(material), obs.size(), m.r2_fit,
                           half, m.formula());
      if (!a.out_dir.empty()) {
        write_file(fs::path(a.out_dir) / fmt::format("deterioration_{}.json", regression::to_string(material)),
                   to_json(m), manifest);
      }
      ++fitted;
    } catch (const Error& e) {
      err << fmt::format("{}: {}\n", regression::to_string(material), e.what());
      ++failed;
    }
  }
  out << table;
  if (fitted == 0) {
    err << "no material could be fitted\n";
    return kExitDomainError;
  }
  if (failed > 0) err << fmt::format("{} material(s) skipped\n", failed);
  return kExitOk;
}

// CLI11 reads set_config files only on the root app. A subcommand's
// --config file is therefore expanded into --key=value flags placed ahead of
// the command line; options take their last value, so explicit flags win.
std::vector<std::string> expand_config_file(const std::vector<std::string>& args) {
  if (args.empty()) return args;
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  std::vector<std::string> expanded = {args.front()};
  for (const auto& item : CLI::ConfigINI().from_file(*path)) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    if (!item.parents.empty() && item.parents != std::vector<std::string>{args.front()}) continue;
    for (const auto& value : item.inputs) expanded.push_back("--" + item.name + "=" + value);
  }
  expanded.insert(expanded.end(), args.begin() + 1, args.end());
  return expanded;
}

void add_seed_option(CLI::App* sub, std::uint64_t& seed) {
  sub->add_option("--seed", seed, "Random seed")->envname("PIPELIFE_SEED")->capture_default_str();
}

void add_reference_year(CLI::App* sub, int& year) {
  sub->add_option("--reference-year", year, "Year ages are measured against")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Water pipe remaining-useful-life toolkit", "pipelife"};
  app.require_subcommand(1, 1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_file;
  std::string manifest_path;

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "Write a synthetic pipe inventory and its moment report");
  gen->add_option("--config", config_file, "Read flags from a key = value file ([<command>] sections allowed)");
  gen->add_option("--n", gen_args.n, "Number of records")->capture_default_str();
  add_seed_option(gen, gen_args.seed);
  add_reference_year(gen, gen_args.reference_year);
  gen->add_option("--out", gen_args.out, "Output CSV path")->required();
  gen->add_option("--moments-json", gen_args.moments_json, "Also write the moment report as JSON");
  gen->add_option("--manifest", manifest_path, "Manifest path (default: <out>.manifest.json)");

  StatsArgs stats_args;
  auto* st = app.add_subcommand("stats", "Summary table and significance screening");
  st->add_option("--config", config_file, "Read flags from a key = value file ([<command>] sections allowed)");
  st->add_option("--in", stats_args.in, "Input CSV")->required();
  st->add_option("--bins", stats_args.bins, "Quantile bins for ANOVA")->capture_default_str()->check(CLI::Range(2, 100));
  st->add_flag("--json", stats_args.json, "Print JSON instead of text");
  add_reference_year(st, stats_args.reference_year);
  st->add_option("--manifest", manifest_path, "Manifest path (none by default)");

  TrainAnnArgs ann_args;
  auto* ann = app.add_subcommand("train-ann", "Train the MLP registry and report errors per split");
  ann->add_option("--config", config_file, "Read flags from a key = value file ([<command>] sections allowed)");
  ann->add_option("--in", ann_args.in, "Input CSV with rul_years")->required();
  add_seed_option(ann, ann_args.seed);
  ann->add_option("--registry", ann_args.registry, "JSON array of model entries (default: built-in eight)");
  ann->add_option("--epochs", ann_args.epochs, "Override every entry's epoch count")->check(CLI::NonNegativeNumber);
  ann->add_option("--out-dir", ann_args.out_dir, "Output directory")->required();
  add_reference_year(ann, ann_args.reference_year);
  ann->add_option("--manifest", manifest_path, "Manifest path (default: <out-dir>/manifest.json)");

  TrainAnfisArgs anfis_args;
  auto* anf = app.add_subcommand("train-anfis", "Train a grid-partition ANFIS with hybrid learning");
  anf->add_option("--config", config_file, "Read flags from a key = value file ([<command>] sections allowed)");
  anf->add_option("--in", anfis_args.in, "Input CSV with rul_years")->required();
  anf->add_option("--inputs", anfis_args.inputs, "Comma-separated input features")->capture_default_str();
  anf->add_option("--mfs", anfis_args.mfs, "Membership functions per input")->capture_default_str();
  anf->add_option("--epochs", anfis_args.epochs, "Hybrid epochs")->capture_default_str()->check(CLI::NonNegativeNumber);
  anf->add_option("--lr", anfis_args.learning_rate, "Premise learning rate")->capture_default_str();
  anf->add_option("--rule-cap", anfis_args.rule_cap, "Maximum rule count")->capture_default_str();
  anf->add_option("--resolution", anfis_args.resolution, "Contour grid points per axis")->capture_default_str();
  add_seed_option(anf, anfis_args.seed);
  anf->add_option("--out-dir", anfis_args.out_dir, "Output directory")->required();
  add_reference_year(anf, anfis_args.reference_year);
  anf->add_option("--manifest", manifest_path, "Manifest path (default: <out-dir>/manifest.json)");

  PredictArgs pred_args;
  auto* pred = app.add_subcommand("predict", "Append a predicted_rul column to a pipe inventory");
  pred->add_option("--config", config_file, "Read flags from a key = value file ([<command>] sections allowed)");
  auto* model_opt = pred->add_option("--model", pred_args.model, "Model JSON written by a train or fit command");
  auto* builtin_opt = pred->add_option("--builtin", pred_args.builtin, "Published deterioration model")
                          ->check(CLI::IsMember({"CI", "DI", "AC", "Steel"}, CLI::ignore_case));
  model_opt->excludes(builtin_opt);
  pred->add_option("--in", pred_args.in, "Input CSV")->required();
  pred->add_option("--out", pred_args.out, "Output CSV")->required();
  add_reference_year(pred, pred_args.reference_year);
  pred->add_option("--manifest", manifest_path, "Manifest path (default: <out>.manifest.json)");

  FitRegressionArgs reg_args;
  auto* reg = app.add_subcommand("fit-regression", "Fit per-material polynomial deterioration models");
  reg->add_option("--config", config_file, "Read flags from a key = value file ([<command>] sections allowed)");
  reg->add_option("--in", reg_args.in, "Input CSV with rul_years")->required();
  reg->add_option("--degree", reg_args.degree, "Total polynomial degree")->capture_default_str()->check(CLI::Range(1, 3));
  reg->add_flag("--greedy", reg_args.greedy, "Forward term selection instead of the full basis");
  reg->add_option("--out-dir", reg_args.out_dir, "Directory for one model JSON per material");
  add_reference_year(reg, reg_args.reference_year);
  reg->add_option("--manifest", manifest_path, "Manifest path (default: <out-dir>/manifest.json)");

  try {
    const auto expanded = expand_config_file(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
    if (*pred && pred_args.model.empty() && pred_args.builtin.empty()) {
      throw CLI::RequiredError("one of --model or --builtin");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      RunManifest m("generate");
      m.set_config(config_snapshot(*gen));
      const int rc = cmd_generate(gen_args, m, out);
      m.write(manifest_path.empty() ? gen_args.out + ".manifest.json" : manifest_path);
      return rc;
    }
    if (*st) {
      RunManifest m("stats");
      m.set_config(config_snapshot(*st));
      const int rc = cmd_stats(stats_args, m, out, err);
      if (!manifest_path.empty()) m.write(manifest_path);
      return rc;
    }
    if (*ann) {
      RunManifest m("train-ann");
      m.set_config(config_snapshot(*ann));
      const int rc = cmd_train_ann(ann_args, m, out, err);
      m.write(manifest_path.empty() ? (fs::path(ann_args.out_dir) / "manifest.json") : fs::path(manifest_path));
      return rc;
    }
    if (*anf) {
      RunManifest m("train-anfis");
      m.set_config(config_snapshot(*anf));
      const int rc = cmd_train_anfis(anfis_args, m, out, err);
      m.write(manifest_path.empty() ? (fs::path(anfis_args.out_dir) / "manifest.json") : fs::path(manifest_path));
      return rc;
    }
    if (*pred) {
      RunManifest m("predict");
      m.set_config(config_snapshot(*pred));
      const int rc = cmd_predict(pred_args, m, out, err);
      m.write(manifest_path.empty() ? pred_args.out + ".manifest.json" : manifest_path);
      return rc;
    }
    if (*reg) {
      RunManifest m("fit-regression");
      m.set_config(config_snapshot(*reg));
      const int rc = cmd_fit_regression(reg_args, m, out, err);
      if (!manifest_path.empty()) {
        m.write(manifest_path);
      } else if (!reg_args.out_dir.empty()) {
        m.write(fs::path(reg_args.out_dir) / "manifest.json");
      }
      return rc;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace pipelife::cli
