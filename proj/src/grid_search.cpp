#include "tweetsense/grid_search.hpp"

#include "tweetsense/error.hpp"
#include "tweetsense/folds.hpp"
#include "tweetsense/metrics.hpp"

namespace tweetsense {

std::vector<ParamSet> expand_grid(const ParamGrid& grid) {
  std::vector<ParamSet> out{ParamSet{}};
  for (const auto& [name, values] : grid) {
    if (values.empty()) throw InvalidArgument("grid axis '" + name + "' has no values");
    std::vector<ParamSet> expanded;
    for (const auto& partial : out) {
      for (const auto& v : values) {
        ParamSet p = partial;
        p[name] = v;
        expanded.push_back(std::move(p));
      }
    }
    out = std::move(expanded);
  }
  return out;
}

ParamGrid default_nb_grid() {
  return {{"alpha", {"0.1", "0.5", "1.0"}}, {"prior_mode", {"empirical", "uniform"}}};
}

ParamGrid default_svm_grid() {
  return {{"lambda", {"1e-4", "1e-3"}}, {"eta0", {"0.01", "0.1"}}, {"epochs", {"10", "50"}}};
}

namespace {

double param_double(const ParamSet& p, const std::string& name, double fallback) {
  auto it = p.find(name);
  if (it == p.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("parameter " + name + " is not a number: '" + it->second + "'");
  }
}

}  // namespace

NBParams nb_params_from(const ParamSet& p) {
  NBParams params;
  params.alpha = param_double(p, "alpha", params.alpha);
  if (auto it = p.find("prior_mode"); it != p.end()) {
    params.prior_mode = parse_prior_mode(it->second);
  }
  if (params.prior_mode == PriorMode::custom) {
    // custom weights are given as prior_negative / prior_neutral / prior_positive
    for (const char* name : {"prior_negative", "prior_neutral", "prior_positive"}) {
      params.custom_weights.push_back(param_double(p, name, 1.0));
    }
  }
  return params;
}

SVMParams svm_params_from(const ParamSet& p, std::uint64_t seed) {
  SVMParams params;
  params.lambda = param_double(p, "lambda", params.lambda);
  params.eta0 = param_double(p, "eta0", params.eta0);
  params.epochs = static_cast<int>(param_double(p, "epochs", params.epochs));
  params.seed = seed;
  return params;
}

Trainer nb_trainer(std::vector<std::string> classes) {
  return [classes = std::move(classes)](const ParamSet& p, const Matrix& X,
                                        std::span<const int> y) -> std::unique_ptr<Classifier> {
    return std::make_unique<NBClassifier>(nb_train(X, y, classes, nb_params_from(p)));
  };
}

Trainer svm_trainer(std::vector<std::string> classes, std::uint64_t seed) {
  return [classes = std::move(classes), seed](
             const ParamSet& p, const Matrix& X,
             std::span<const int> y) -> std::unique_ptr<Classifier> {
    return std::make_unique<SVMClassifier>(svm_train(X, y, classes, svm_params_from(p, seed)));
  };
}

GridSearchResult grid_search(const std::vector<ParamSet>& space, const Matrix& X,
                             std::span<const int> y, std::vector<std::string> classes, int k,
                             std::uint64_t seed, const Trainer& trainer) {
  if (space.empty()) throw InvalidArgument("grid is empty");
  if (k < 2) throw InvalidArgument("grid search needs at least 2 folds");
  if (X.size() != y.size()) throw LengthMismatch(X.size(), y.size());

  std::vector<std::size_t> class_sizes(classes.size(), 0);
  for (int label : y) {
    if (label < 0 || static_cast<std::size_t>(label) >= classes.size()) {
      throw InvalidArgument("label index out of range");
    }
    ++class_sizes[static_cast<std::size_t>(label)];
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (class_sizes[c] > 0 && class_sizes[c] < static_cast<std::size_t>(k)) {
      throw FoldTooSmall(classes[c], class_sizes[c], k);
    }
  }

  const auto folds = stratified_folds(y, k, seed);

  GridSearchResult result;
  result.seed = seed;
  result.folds = k;
  bool have_best = false;
  for (const auto& params : space) {
    double sum = 0.0;
    for (int f = 0; f < k; ++f) {
      Matrix train_x;
      std::vector<int> train_y;
      for (std::size_t i : fold_complement(folds, f)) {
        train_x.push_back(X[i]);
        train_y.push_back(y[i]);
      }
      const auto model = trainer(params, train_x, train_y);
      std::vector<int> preds;
      std::vector<int> gold;
      for (std::size_t i : fold_members(folds, f)) {
        preds.push_back(model->predict(X[i]));
        gold.push_back(y[i]);
      }
      sum += evaluate(preds, gold, classes).macro.f1;
    }
    const double score = sum / static_cast<double>(k);
    result.table.emplace_back(params, score);
    if (!have_best || score > result.best_score) {
      result.best_score = score;
      result.best_params = params;
      have_best = true;
    }
  }
  result.final_model = trainer(result.best_params, X, y);
  return result;
}

nlohmann::ordered_json GridSearchResult::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["folds"] = folds;
  j["best_params"] = best_params;
  j["best_score"] = best_score;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& [params, score] : table) {
    rows.push_back({{"params", params}, {"score", score}});
  }
  j["table"] = rows;
  return j;
}

}  // namespace tweetsense
