#include "tweetsense/svm.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "tweetsense/error.hpp"

namespace tweetsense {

SVMModel svm_train(const Matrix& X, std::span<const int> y, std::vector<std::string> classes,
                   const SVMParams& hyper) {
  if (X.empty()) throw EmptyTrainingSet();
  if (y.size() != X.size()) throw LengthMismatch(X.size(), y.size());
  if (classes.empty()) throw InvalidArgument("at least one class is required");
  if (!(hyper.lambda >= 0.0) || !(hyper.eta0 > 0.0) || hyper.epochs < 1) {
    throw InvalidArgument("svm needs lambda >= 0, eta0 > 0 and epochs >= 1");
  }
  const std::size_t n = X.front().size();
  for (std::size_t d = 0; d < X.size(); ++d) {
    if (X[d].size() != n) throw DimensionMismatch(n, X[d].size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(X[d][i])) throw NonFiniteFeature(i);
    }
    if (y[d] < 0 || static_cast<std::size_t>(y[d]) >= classes.size()) {
      throw InvalidArgument("label index " + std::to_string(y[d]) + " out of range");
    }
  }

  SVMModel m;
  m.classes = std::move(classes);
  m.hyper = hyper;
  const std::size_t k_classes = m.classes.size();
  m.weights.assign(k_classes, std::vector<double>(n, 0.0));
  m.bias.assign(k_classes, 0.0);

  std::mt19937_64 rng(hyper.seed);
  std::vector<std::size_t> order(X.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  std::uint64_t t = 0;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng() % i)]);
    }
    for (std::size_t d : order) {
      ++t;
      const double eta = hyper.eta0 / (1.0 + hyper.eta0 * hyper.lambda * static_cast<double>(t));
      const double shrink = 1.0 - eta * hyper.lambda;
      const auto& x = X[d];
      for (std::size_t k = 0; k < k_classes; ++k) {
        const double target = y[d] == static_cast<int>(k) ? 1.0 : -1.0;
        auto& w = m.weights[k];
        double margin = m.bias[k];
        for (std::size_t i = 0; i < n; ++i) margin += w[i] * x[i];
        margin *= target;
        for (double& wi : w) wi *= shrink;
        if (margin < 1.0) {
          for (std::size_t i = 0; i < n; ++i) w[i] += eta * target * x[i];
          m.bias[k] += eta * target;
        }
      }
    }
  }
  return m;
}

std::vector<double> svm_scores(const SVMModel& m, std::span<const double> x) {
  if (x.size() != m.num_features()) throw DimensionMismatch(m.num_features(), x.size());
  std::vector<double> scores(m.classes.size());
  for (std::size_t k = 0; k < scores.size(); ++k) {
    double s = m.bias[k];
    for (std::size_t i = 0; i < x.size(); ++i) s += m.weights[k][i] * x[i];
    scores[k] = s;
  }
  return scores;
}

int svm_predict(const SVMModel& m, std::span<const double> x) {
  return argmax_first(svm_scores(m, x));
}

nlohmann::json SVMModel::to_json() const {
  nlohmann::json j;
  j["classes"] = classes;
  j["weights"] = weights;
  j["bias"] = bias;
  j["lambda"] = hyper.lambda;
  j["eta0"] = hyper.eta0;
  j["epochs"] = hyper.epochs;
  j["seed"] = hyper.seed;
  return j;
}

SVMModel SVMModel::from_json(const nlohmann::json& j) {
  SVMModel m;
  m.classes = j.at("classes").get<std::vector<std::string>>();
  m.weights = j.at("weights").get<std::vector<std::vector<double>>>();
  m.bias = j.at("bias").get<std::vector<double>>();
  m.hyper.lambda = j.at("lambda").get<double>();
  m.hyper.eta0 = j.at("eta0").get<double>();
  m.hyper.epochs = j.at("epochs").get<int>();
  m.hyper.seed = j.at("seed").get<std::uint64_t>();
  if (m.weights.size() != m.classes.size() || m.bias.size() != m.classes.size()) {
    throw Error("svm model: class count mismatch");
  }
  return m;
}

}  // namespace tweetsense
