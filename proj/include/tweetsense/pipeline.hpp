#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tweetsense/corpus.hpp"
#include "tweetsense/features.hpp"
#include "tweetsense/grid_search.hpp"
#include "tweetsense/naive_bayes.hpp"
#include "tweetsense/normalize.hpp"
#include "tweetsense/svm.hpp"
#include "tweetsense/url_context.hpp"

namespace tweetsense {

class LexiconBundle;
class Tagger;

enum class ModelKind { nb, svm };
std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view s);

struct PreparedTweet {
  Tweet tweet;
  NormalizedTweet normalized;
  /// Distinct URLs of the raw text, in order of first appearance.
  std::vector<std::string> urls;
  UrlSentiment url_sentiment;
};

/// Normalization plus URL context for whole corpora.
class TextPipeline {
 public:
  /// `context` may be null, in which case f5 is always zero.
  TextPipeline(const LexiconBundle& lex, const Tagger& tagger, UrlContext* context)
      : lex_(lex), tagger_(tagger), context_(context) {}

  /// URL sentiment is only looked up when `with_urls` is set; the URLs of
  /// the whole corpus are prefetched first.
  std::vector<PreparedTweet> prepare_all(const Corpus& corpus, bool with_urls) const;
  PreparedTweet prepare(const Tweet& tweet, bool with_urls) const;

  const LexiconBundle& lexicons() const { return lex_; }

 private:
  const LexiconBundle& lex_;
  const Tagger& tagger_;
  UrlContext* context_;
};

struct PipelineConfig {
  FeatureMask mask = FeatureMask::all();
  ModelKind model = ModelKind::nb;
  /// Hyperparameters used when not tuning, as grid-style key/values.
  ParamSet params;
  std::uint64_t seed = 42;
  int stack_folds = 5;
  double stack_alpha = 1.0;
  bool tune = false;
  int cv_folds = 5;
  /// Empty means the default grid for the model kind.
  ParamGrid grid;
};

struct TuningSummary {
  GridSearchResult search;
  /// CV macro-F1 of the untuned parameters on the same folds.
  double default_score = 0.0;
  ParamSet default_params;
};

struct ModelOutput {
  Label label = Label::neutral;
  /// Class probabilities in class order; NB only.
  std::optional<std::array<double, 3>> posterior;
  FeatureVector features;
};

/// Sentiment classifier over the enabled feature families. Only tweets
/// labelled positive, negative or neutral take part in training.
class SentimentModel {
 public:
  static constexpr int kFormatVersion = 1;

  static SentimentModel train(std::span<const PreparedTweet> train, const PipelineConfig& cfg,
                              const LexiconBundle& lex);

  std::vector<ModelOutput> predict(std::span<const PreparedTweet> tweets,
                                   const LexiconBundle& lex) const;

  FeatureMask mask() const { return mask_; }
  ModelKind kind() const { return kind_; }
  const ParamSet& params() const { return params_; }
  const std::optional<TuningSummary>& tuning() const { return tuning_; }
  const std::optional<NBModel>& nb() const { return nb_; }
  const std::optional<SVMModel>& svm() const { return svm_; }
  const CategoricalEncoder& encoder() const { return encoder_; }

  nlohmann::ordered_json to_json() const;
  /// Throws UnknownFormatVersion.
  static SentimentModel from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  /// Throws MissingFile, or Error naming the path for unreadable JSON.
  static SentimentModel load(const std::filesystem::path& path);

 private:
  std::vector<double> feature_row(const PreparedTweet& t, const LexiconBundle& lex,
                                  const std::optional<std::array<double, 3>>& stacked) const;

  FeatureMask mask_;
  ModelKind kind_ = ModelKind::nb;
  ParamSet params_;
  std::uint64_t seed_ = 42;
  CategoricalEncoder encoder_;
  std::optional<TfidfStacker> stacker_;
  std::optional<NBModel> nb_;
  std::optional<SVMModel> svm_;
  /// Per-column divisor applied before the SVM (max |x| on train, or 1).
  std::vector<double> feature_scale_;
  std::optional<TuningSummary> tuning_;
};

/// Sentiment-class indices (negative, neutral, positive) of the tweets
/// whose label is one of the three classes; other tweets are skipped and
/// their positions are not returned.
std::vector<std::size_t> sentiment_rows(std::span<const PreparedTweet> tweets);

}  // namespace tweetsense
