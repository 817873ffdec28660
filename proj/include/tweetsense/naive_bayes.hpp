#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace tweetsense {

/// Non-zero entries of a feature row, sorted by column.
using SparseRow = std::vector<std::pair<std::size_t, double>>;
using Matrix = std::vector<std::vector<double>>;

enum class PriorMode { empirical, uniform, custom };

std::string_view to_string(PriorMode mode);
PriorMode parse_prior_mode(std::string_view s);

struct NBParams {
  /// Additive smoothing, must be > 0.
  double alpha = 1.0;
  PriorMode prior_mode = PriorMode::empirical;
  /// One positive weight per class when prior_mode == custom; normalised.
  std::vector<double> custom_weights;
};

/// Multinomial naive Bayes. Classes are indexed 0..K-1; on equal scores the
/// lower index wins.
struct NBModel {
  std::vector<std::string> classes;
  std::vector<double> log_prior;
  /// [class][feature]
  std::vector<std::vector<double>> log_likelihood;
  double alpha = 1.0;
  PriorMode prior_mode = PriorMode::empirical;

  std::size_t num_features() const {
    return log_likelihood.empty() ? 0 : log_likelihood.front().size();
  }

  nlohmann::json to_json() const;
  static NBModel from_json(const nlohmann::json& j);
};

struct Prediction {
  int label = 0;
  std::vector<double> posterior;
};

/// log p(x_i|C_k) = ln((N_ki + alpha) / (N_k + alpha * n)) where N_ki sums
/// feature i over class-k rows. Throws EmptyTrainingSet, NegativeFeature,
/// MissingClass (empirical priors with an absent class), InvalidArgument.
NBModel nb_train(const Matrix& X, std::span<const int> y, std::vector<std::string> classes,
                 const NBParams& params);
NBModel nb_train_sparse(std::span<const SparseRow> X, std::size_t num_features,
                        std::span<const int> y, std::vector<std::string> classes,
                        const NBParams& params);

/// Per-class log p(C_k) + sum_i x_i log p(x_i|C_k).
std::vector<double> nb_log_scores(const NBModel& m, std::span<const double> x);

/// argmax of the log scores; posterior is their softmax. Throws
/// DimensionMismatch.
Prediction nb_predict(const NBModel& m, std::span<const double> x);
Prediction nb_predict(const NBModel& m, const SparseRow& x);

/// Index of the largest value, lowest index on ties.
int argmax_first(std::span<const double> values);
std::vector<double> softmax(std::span<const double> scores);

}  // namespace tweetsense
