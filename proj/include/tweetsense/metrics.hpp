#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tweetsense/labels.hpp"

namespace tweetsense {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
  /// The class was never predicted, so precision fell back to 0.
  bool no_predictions = false;
};

struct AverageMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  std::vector<std::string> classes;
  std::vector<ClassMetrics> per_class;
  /// Support-weighted ("avg/total").
  AverageMetrics weighted;
  /// Unweighted mean over classes.
  AverageMetrics macro;
  /// confusion[gold][predicted]
  std::vector<std::vector<std::size_t>> confusion;

  std::size_t total() const;
  nlohmann::ordered_json to_json() const;
  /// precision / recall / f1 / support rows plus avg/total, and the macro
  /// row when `with_macro` is set.
  std::string to_table(bool with_macro) const;
};

/// Every metric is derived from the confusion matrix alone. Zero
/// denominators give 0.
EvalReport report_from_confusion(std::vector<std::string> classes,
                                 std::vector<std::vector<std::size_t>> confusion);

/// Labels are class indices into `classes`. Throws LengthMismatch.
EvalReport evaluate(std::span<const int> preds, std::span<const int> gold,
                    std::vector<std::string> classes);

/// Three-class sentiment evaluation; every label must be positive, negative
/// or neutral.
EvalReport evaluate(std::span<const Label> preds, std::span<const Label> gold);

}  // namespace tweetsense
