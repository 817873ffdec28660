#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tweetsense/naive_bayes.hpp"

namespace tweetsense {

struct SVMParams {
  /// L2 regularisation strength.
  double lambda = 1e-4;
  /// Initial learning rate; step t uses eta0 / (1 + eta0 * lambda * t).
  double eta0 = 0.01;
  int epochs = 10;
  std::uint64_t seed = 42;
};

/// One-vs-rest linear SVM trained with per-sample hinge-loss SGD.
struct SVMModel {
  std::vector<std::string> classes;
  std::vector<std::vector<double>> weights;  // [class][feature]
  std::vector<double> bias;
  SVMParams hyper;

  std::size_t num_features() const { return weights.empty() ? 0 : weights.front().size(); }

  nlohmann::json to_json() const;
  static SVMModel from_json(const nlohmann::json& j);
};

/// Examples are visited in a fresh seeded shuffle each epoch. Throws
/// EmptyTrainingSet, NonFiniteFeature, InvalidArgument.
SVMModel svm_train(const Matrix& X, std::span<const int> y, std::vector<std::string> classes,
                   const SVMParams& hyper);

/// w_k . x + b_k for every class.
std::vector<double> svm_scores(const SVMModel& m, std::span<const double> x);

/// argmax of svm_scores, lowest class index on ties. Throws DimensionMismatch.
int svm_predict(const SVMModel& m, std::span<const double> x);

}  // namespace tweetsense
