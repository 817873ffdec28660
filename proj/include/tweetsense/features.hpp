#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tweetsense/corpus.hpp"
#include "tweetsense/naive_bayes.hpp"
#include "tweetsense/normalize.hpp"
#include "tweetsense/url_context.hpp"

namespace tweetsense {

class LexiconBundle;

/// Which feature families f1..f9 are enabled. The tweet target is a
/// categorical that travels with f9.
class FeatureMask {
 public:
  static constexpr int kFamilies = 9;

  static FeatureMask all();
  static FeatureMask none() { return FeatureMask(); }
  /// "f1,f2,f4" (case-insensitive, spaces allowed) or "all". Throws
  /// InvalidArgument.
  static FeatureMask parse(std::string_view text);

  bool has(int family) const { return bits_.test(static_cast<std::size_t>(family)); }
  FeatureMask& set(int family, bool on = true);
  bool empty() const { return bits_.none(); }
  std::string to_string() const;

  bool operator==(const FeatureMask&) const = default;

 private:
  std::bitset<kFamilies + 1> bits_;
};

struct PolarityCounts {
  std::size_t strong_pos = 0;
  std::size_t strong_neg = 0;
  std::size_t weak_pos = 0;
  std::size_t weak_neg = 0;
};

/// Prior-polarity counts with negation flips: a negated weak positive
/// counts as weak negative, and so on. Neutral entries are ignored.
PolarityCounts polarity_counts(const std::vector<Token>& tokens, const LexiconBundle& lex);

/// Index 0 is reserved for users / targets not seen at fit time.
class CategoricalEncoder {
 public:
  static CategoricalEncoder fit(std::span<const Tweet> tweets);

  std::size_t user_index(const std::string& user_id) const;
  std::size_t target_index(const std::string& target) const;
  std::size_t user_slots() const { return users_.size() + 1; }
  std::size_t target_slots() const { return targets_.size() + 1; }

  nlohmann::json to_json() const;
  static CategoricalEncoder from_json(const nlohmann::json& j);

  bool operator==(const CategoricalEncoder&) const = default;

 private:
  std::map<std::string, std::size_t> users_;
  std::map<std::string, std::size_t> targets_;
};

struct FeatureVector {
  std::array<double, 4> pos_tags{};       // f1: noun, adj, adv, verb
  std::array<double, 4> polarity{};       // f2: strong_pos, strong_neg, weak_pos, weak_neg
  std::array<double, 2> twitter{};        // f3: is_retweet, has_mention
  std::array<double, 2> emoticons{};      // f4: positive, negative
  std::array<double, 3> url_sentiment{};  // f5: frac_pos, frac_neg, frac_neu
  double hashtags = 0.0;                  // f6
  double capitalized = 0.0;               // f7
  std::optional<std::array<double, 3>> stacked;  // f8, class order of kSentimentClasses
  std::size_t user_index = 0;             // f9
  std::size_t target_index = 0;
  FeatureMask mask;
};

/// Only the families enabled in `mask` are filled in. f8 must be supplied
/// when the mask enables it. Unknown users and targets map to index 0.
FeatureVector extract_features(const NormalizedTweet& nt, const Tweet& tweet,
                               const LexiconBundle& lex, const UrlSentiment& url_sentiment,
                               const CategoricalEncoder& encoder,
                               const std::optional<std::array<double, 3>>& stacked,
                               FeatureMask mask);

/// Scale applied to the f5 fractions and f8 probabilities when flattening.
inline constexpr double kFractionScale = 10.0;

/// Non-negative dense row for the classifiers. Disabled families take no
/// columns; f9 and target are one-hot.
std::vector<double> flatten(const FeatureVector& fv, const CategoricalEncoder& encoder);
std::size_t flattened_size(FeatureMask mask, const CategoricalEncoder& encoder);
std::vector<std::string> flattened_names(FeatureMask mask, const CategoricalEncoder& encoder);

struct TfidfModel {
  std::map<std::string, std::size_t> vocabulary;
  /// ln((1 + N) / (1 + df)) + 1 per vocabulary column.
  std::vector<double> idf;
  std::size_t doc_count = 0;

  nlohmann::json to_json() const;
  static TfidfModel from_json(const nlohmann::json& j);
};

/// Terms of a tweet for tf-idf: its token surfaces (hashtag segments
/// included) plus each whole hashtag as "#tag".
std::vector<std::string> tfidf_terms(const NormalizedTweet& nt);

/// Vocabulary columns follow lexicographic term order. Throws EmptyCorpus.
TfidfModel tfidf_fit(std::span<const NormalizedTweet> corpus);

/// tf * idf for in-vocabulary terms, L2-normalised; zero vector if none.
SparseRow tfidf_transform(const TfidfModel& model, const NormalizedTweet& nt);

/// tf-idf vectoriser + naive Bayes that produces the f8 probabilities.
struct TfidfStacker {
  TfidfModel tfidf;
  NBModel nb;

  std::array<double, 3> predict(const NormalizedTweet& nt) const;

  nlohmann::json to_json() const;
  static TfidfStacker from_json(const nlohmann::json& j);
};

struct StackingResult {
  /// Out-of-fold probabilities, one triple per training tweet.
  std::vector<std::array<double, 3>> out_of_fold;
  std::vector<int> folds;
  /// Fitted on the whole training split; used at inference time.
  TfidfStacker final_model;
};

/// Labels are indices into kSentimentClasses. Each tweet's triple comes from
/// a stacker fitted on the other folds only. Throws ClassMissingInFold when
/// a class has no training tweets at all.
StackingResult stacked_tfidf_feature(std::span<const NormalizedTweet> train,
                                     std::span<const int> labels, int k, std::uint64_t seed,
                                     double alpha = 1.0);

/// Same with a caller-supplied fold assignment.
StackingResult stacked_tfidf_feature(std::span<const NormalizedTweet> train,
                                     std::span<const int> labels, std::span<const int> folds,
                                     double alpha = 1.0);

}  // namespace tweetsense
