#include "tweetsense/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tweetsense/error.hpp"

namespace tweetsense {

std::string_view to_string(PriorMode mode) {
  switch (mode) {
    case PriorMode::empirical: return "empirical";
    case PriorMode::uniform: return "uniform";
    case PriorMode::custom: return "custom";
  }
  return "empirical";
}

PriorMode parse_prior_mode(std::string_view s) {
  if (s == "empirical") return PriorMode::empirical;
  if (s == "uniform") return PriorMode::uniform;
  if (s == "custom") return PriorMode::custom;
  throw InvalidArgument("unknown prior mode '" + std::string(s) + "'");
}

namespace {

struct Counts {
  std::vector<std::vector<double>> feature;  // [class][feature]
  std::vector<std::size_t> docs;             // rows per class
};

NBModel finish(Counts counts, std::size_t num_features, std::vector<std::string> classes,
               const NBParams& params) {
  const std::size_t k_classes = classes.size();
  if (!(params.alpha > 0.0) || !std::isfinite(params.alpha)) {
    throw InvalidArgument("alpha must be a positive finite number");
  }

  NBModel m;
  m.classes = std::move(classes);
  m.alpha = params.alpha;
  m.prior_mode = params.prior_mode;

  std::vector<double> prior(k_classes, 0.0);
  switch (params.prior_mode) {
    case PriorMode::empirical: {
      std::size_t total = 0;
      for (std::size_t k = 0; k < k_classes; ++k) {
        if (counts.docs[k] == 0) throw MissingClass(m.classes[k]);
        total += counts.docs[k];
      }
      for (std::size_t k = 0; k < k_classes; ++k) {
        prior[k] = static_cast<double>(counts.docs[k]) / static_cast<double>(total);
      }
      break;
    }
    case PriorMode::uniform:
      std::fill(prior.begin(), prior.end(), 1.0 / static_cast<double>(k_classes));
      break;
    case PriorMode::custom: {
      if (params.custom_weights.size() != k_classes) {
        throw InvalidArgument("custom prior needs one weight per class");
      }
      double sum = 0.0;
      for (double w : params.custom_weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
          throw InvalidArgument("custom prior weights must be positive");
        }
        sum += w;
      }
      for (std::size_t k = 0; k < k_classes; ++k) prior[k] = params.custom_weights[k] / sum;
      break;
    }
  }

  m.log_prior.resize(k_classes);
  m.log_likelihood.assign(k_classes, std::vector<double>(num_features, 0.0));
  const double smoothing_mass = params.alpha * static_cast<double>(num_features);
  for (std::size_t k = 0; k < k_classes; ++k) {
    m.log_prior[k] = std::log(prior[k]);
    double total = 0.0;
    for (double v : counts.feature[k]) total += v;
    const double log_denom = std::log(total + smoothing_mass);
    for (std::size_t i = 0; i < num_features; ++i) {
      m.log_likelihood[k][i] = std::log(counts.feature[k][i] + params.alpha) - log_denom;
    }
  }
  return m;
}

void check_labels(std::span<const int> y, std::size_t rows, std::size_t k_classes) {
  if (rows == 0) throw EmptyTrainingSet();
  if (y.size() != rows) throw LengthMismatch(rows, y.size());
  if (k_classes == 0) throw InvalidArgument("at least one class is required");
  for (int label : y) {
    if (label < 0 || static_cast<std::size_t>(label) >= k_classes) {
      throw InvalidArgument("label index " + std::to_string(label) + " out of range");
    }
  }
}

void check_value(double v, std::size_t column) {
  if (!std::isfinite(v)) throw NonFiniteFeature(column);
  if (v < 0.0) throw NegativeFeature(column);
}

}  // namespace

NBModel nb_train(const Matrix& X, std::span<const int> y, std::vector<std::string> classes,
                 const NBParams& params) {
  check_labels(y, X.size(), classes.size());
  const std::size_t n = X.front().size();
  Counts counts{std::vector<std::vector<double>>(classes.size(), std::vector<double>(n, 0.0)),
                std::vector<std::size_t>(classes.size(), 0)};
  for (std::size_t d = 0; d < X.size(); ++d) {
    if (X[d].size() != n) throw DimensionMismatch(n, X[d].size());
    auto& row = counts.feature[static_cast<std::size_t>(y[d])];
    for (std::size_t i = 0; i < n; ++i) {
      check_value(X[d][i], i);
      row[i] += X[d][i];
    }
    ++counts.docs[static_cast<std::size_t>(y[d])];
  }
  return finish(std::move(counts), n, std::move(classes), params);
}

NBModel nb_train_sparse(std::span<const SparseRow> X, std::size_t num_features,
                        std::span<const int> y, std::vector<std::string> classes,
                        const NBParams& params) {
  check_labels(y, X.size(), classes.size());
  Counts counts{
      std::vector<std::vector<double>>(classes.size(), std::vector<double>(num_features, 0.0)),
      std::vector<std::size_t>(classes.size(), 0)};
  for (std::size_t d = 0; d < X.size(); ++d) {
    auto& row = counts.feature[static_cast<std::size_t>(y[d])];
    for (const auto& [i, v] : X[d]) {
      if (i >= num_features) throw DimensionMismatch(num_features, i + 1);
      check_value(v, i);
      row[i] += v;
    }
    ++counts.docs[static_cast<std::size_t>(y[d])];
  }
  return finish(std::move(counts), num_features, std::move(classes), params);
}

std::vector<double> nb_log_scores(const NBModel& m, std::span<const double> x) {
  if (x.size() != m.num_features()) throw DimensionMismatch(m.num_features(), x.size());
  std::vector<double> scores = m.log_prior;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    const auto& ll = m.log_likelihood[k];
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0.0) scores[k] += x[i] * ll[i];
    }
  }
  return scores;
}

int argmax_first(std::span<const double> values) {
  int best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[static_cast<std::size_t>(best)]) best = static_cast<int>(k);
  }
  return best;
}

std::vector<double> softmax(std::span<const double> scores) {
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> out(scores.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    out[k] = std::exp(scores[k] - top);
    sum += out[k];
  }
  for (double& v : out) v /= sum;
  return out;
}

Prediction nb_predict(const NBModel& m, std::span<const double> x) {
  const auto scores = nb_log_scores(m, x);
  return {argmax_first(scores), softmax(scores)};
}

Prediction nb_predict(const NBModel& m, const SparseRow& x) {
  std::vector<double> scores = m.log_prior;
  const std::size_t n = m.num_features();
  for (const auto& [i, v] : x) {
    if (i >= n) throw DimensionMismatch(n, i + 1);
    for (std::size_t k = 0; k < scores.size(); ++k) scores[k] += v * m.log_likelihood[k][i];
  }
  return {argmax_first(scores), softmax(scores)};
}

nlohmann::json NBModel::to_json() const {
  nlohmann::json j;
  j["classes"] = classes;
  j["log_prior"] = log_prior;
  j["log_likelihood"] = log_likelihood;
  j["alpha"] = alpha;
  j["prior_mode"] = std::string(tweetsense::to_string(prior_mode));
  return j;
}

NBModel NBModel::from_json(const nlohmann::json& j) {
  NBModel m;
  m.classes = j.at("classes").get<std::vector<std::string>>();
  m.log_prior = j.at("log_prior").get<std::vector<double>>();
  m.log_likelihood = j.at("log_likelihood").get<std::vector<std::vector<double>>>();
  m.alpha = j.at("alpha").get<double>();
  m.prior_mode = parse_prior_mode(j.at("prior_mode").get<std::string>());
  if (m.log_prior.size() != m.classes.size() || m.log_likelihood.size() != m.classes.size()) {
    throw Error("naive bayes model: class count mismatch");
  }
  return m;
}

}  // namespace tweetsense
