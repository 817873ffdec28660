#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tweetsense/naive_bayes.hpp"
#include "tweetsense/svm.hpp"

namespace tweetsense {

/// Hyperparameter name -> canonical string value.
using ParamSet = std::map<std::string, std::string>;
/// Ordered axes; the last axis varies fastest in expand_grid.
using ParamGrid = std::vector<std::pair<std::string, std::vector<std::string>>>;

std::vector<ParamSet> expand_grid(const ParamGrid& grid);

/// alpha in {0.1, 0.5, 1.0} x prior_mode in {empirical, uniform}.
ParamGrid default_nb_grid();
/// lambda in {1e-4, 1e-3} x eta0 in {0.01, 0.1} x epochs in {10, 50}.
ParamGrid default_svm_grid();

NBParams nb_params_from(const ParamSet& params);
SVMParams svm_params_from(const ParamSet& params, std::uint64_t seed);

class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual int predict(std::span<const double> x) const = 0;
};

class NBClassifier final : public Classifier {
 public:
  explicit NBClassifier(NBModel model) : model_(std::move(model)) {}
  int predict(std::span<const double> x) const override { return nb_predict(model_, x).label; }
  const NBModel& model() const { return model_; }

 private:
  NBModel model_;
};

class SVMClassifier final : public Classifier {
 public:
  explicit SVMClassifier(SVMModel model) : model_(std::move(model)) {}
  int predict(std::span<const double> x) const override { return svm_predict(model_, x); }
  const SVMModel& model() const { return model_; }

 private:
  SVMModel model_;
};

using Trainer = std::function<std::unique_ptr<Classifier>(const ParamSet&, const Matrix&,
                                                          std::span<const int>)>;

Trainer nb_trainer(std::vector<std::string> classes);
Trainer svm_trainer(std::vector<std::string> classes, std::uint64_t seed);

struct GridSearchResult {
  ParamSet best_params;
  /// Mean macro-F1 over the CV folds.
  double best_score = 0.0;
  std::vector<std::pair<ParamSet, double>> table;
  std::uint64_t seed = 0;
  int folds = 0;
  /// Retrained on all rows with best_params.
  std::shared_ptr<Classifier> final_model;

  nlohmann::ordered_json to_json() const;
};

/// Stratified k-fold CV of every grid point, scored by macro-F1. The first
/// point with the highest mean score wins. Throws FoldTooSmall when a class
/// has fewer than k examples, InvalidArgument for an empty grid or k < 2.
GridSearchResult grid_search(const std::vector<ParamSet>& space, const Matrix& X,
                             std::span<const int> y, std::vector<std::string> classes, int k,
                             std::uint64_t seed, const Trainer& trainer);

}  // namespace tweetsense
