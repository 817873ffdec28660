#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tweetsense/features.hpp"
#include "tweetsense/labels.hpp"
#include "tweetsense/normalize.hpp"

namespace tweetsense {

struct TermCollection {
  Label cls = Label::unlabeled;
  std::map<std::string, std::size_t> term_freq;
  /// Count descending, then term ascending.
  std::vector<std::string> ranked;
};

/// Counts token surfaces over the tweets of one class.
TermCollection rank_frequencies(std::span<const NormalizedTweet> tweets,
                                Label cls = Label::unlabeled);

/// Builds a collection straight from counts (tests, tools).
TermCollection make_collection(std::map<std::string, std::size_t> term_freq,
                               Label cls = Label::unlabeled);

struct HarvestConfig {
  double threshold1 = 0.10;
  double threshold2 = 0.60;

  /// Throws InvalidArgument unless both lie in (0, 1].
  void validate() const;
};

/// ceil(fraction * size) leading entries of `ranked`.
std::size_t slice_size(double fraction, std::size_t size);

/// Terms from the top threshold1 slice of `src` that are absent from the
/// top threshold2 slices of both other collections, in src rank order.
std::vector<std::pair<std::string, std::size_t>> harvest_terms(const TermCollection& src,
                                                               const TermCollection& other1,
                                                               const TermCollection& other2,
                                                               const HarvestConfig& cfg);

struct StrengthComponents {
  std::size_t capitalized = 0;
  std::size_t strong_pos = 0;
  std::size_t strong_neg = 0;
  std::size_t weak_pos = 0;
  std::size_t weak_neg = 0;
  Label predicted = Label::neutral;
};

struct StrengthScore {
  int value = 0;
  std::size_t raw = 0;
  StrengthComponents components;

  nlohmann::ordered_json to_json() const;
};

inline constexpr double kDefaultStrengthCalibration = 10.0;

/// raw = caps + 2 * strong + weak; |value| = min(5, round(5 * raw / R)),
/// signed by the predicted label. Neutral is always 0.
StrengthScore strength_score(const StrengthComponents& components,
                             double R = kDefaultStrengthCalibration);

/// Reads f2 and f7 from the vector. Throws InvalidArgument when either
/// family is masked out.
StrengthScore strength_score(const FeatureVector& fv, Label predicted,
                             double R = kDefaultStrengthCalibration);

}  // namespace tweetsense
