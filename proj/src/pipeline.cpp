#include "tweetsense/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tweetsense/error.hpp"
#include "tweetsense/labels.hpp"
#include "tweetsense/lexicons.hpp"
#include "tweetsense/tagging.hpp"
#include "tweetsense/text.hpp"

namespace tweetsense {

std::string_view to_string(ModelKind kind) { return kind == ModelKind::nb ? "nb" : "svm"; }

ModelKind parse_model_kind(std::string_view s) {
  const auto lower = to_lower(s);
  if (lower == "nb") return ModelKind::nb;
  if (lower == "svm") return ModelKind::svm;
  throw InvalidArgument("unknown model kind '" + std::string(s) + "' (expected nb or svm)");
}

PreparedTweet TextPipeline::prepare(const Tweet& tweet, bool with_urls) const {
  PreparedTweet p;
  p.tweet = tweet;
  p.normalized = normalize_tweet(tweet, lex_, tagger_);
  std::set<std::string> seen;
  for (const auto& url : p.normalized.artifacts.urls) {
    if (seen.insert(url).second) p.urls.push_back(url);
  }
  if (with_urls && context_ != nullptr && !p.urls.empty()) {
    p.url_sentiment = url_sentiment_fractions(p.urls, *context_, lex_, tagger_);
  }
  return p;
}

std::vector<PreparedTweet> TextPipeline::prepare_all(const Corpus& corpus, bool with_urls) const {
  if (with_urls && context_ != nullptr) {
    std::vector<std::string> urls;
    for (const auto& t : corpus.tweets) {
      for (auto& u : extract_urls(t.text)) urls.push_back(std::move(u));
    }
    context_->prefetch(urls);
  }
  std::vector<PreparedTweet> out;
  out.reserve(corpus.tweets.size());
  for (const auto& t : corpus.tweets) out.push_back(prepare(t, with_urls));
  return out;
}

std::vector<std::size_t> sentiment_rows(std::span<const PreparedTweet> tweets) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    if (is_sentiment_class(tweets[i].tweet.label)) rows.push_back(i);
  }
  return rows;
}

namespace {

ParamSet default_params(ModelKind kind) {
  if (kind == ModelKind::nb) return {{"alpha", "1.0"}, {"prior_mode", "empirical"}};
  return {{"lambda", "1e-4"}, {"eta0", "0.01"}, {"epochs", "10"}};
}

Trainer trainer_for(ModelKind kind, std::uint64_t seed) {
  return kind == ModelKind::nb ? nb_trainer(sentiment_class_names())
                               : svm_trainer(sentiment_class_names(), seed);
}

std::vector<double> column_scale(const Matrix& X) {
  std::vector<double> scale(X.empty() ? 0 : X.front().size(), 0.0);
  for (const auto& row : X) {
    for (std::size_t c = 0; c < row.size(); ++c) scale[c] = std::max(scale[c], std::abs(row[c]));
  }
  for (auto& s : scale) {
    if (s == 0.0) s = 1.0;
  }
  return scale;
}

void apply_scale(std::vector<double>& row, const std::vector<double>& scale) {
  for (std::size_t c = 0; c < row.size() && c < scale.size(); ++c) row[c] /= scale[c];
}

}  // namespace

std::vector<double> SentimentModel::feature_row(
    const PreparedTweet& t, const LexiconBundle& lex,
    const std::optional<std::array<double, 3>>& stacked) const {
  const auto fv = extract_features(t.normalized, t.tweet, lex, t.url_sentiment, encoder_, stacked,
                                   mask_);
  auto row = flatten(fv, encoder_);
  if (kind_ == ModelKind::svm) apply_scale(row, feature_scale_);
  return row;
}

SentimentModel SentimentModel::train(std::span<const PreparedTweet> all,
                                     const PipelineConfig& cfg, const LexiconBundle& lex) {
  if (cfg.mask.empty()) throw InvalidArgument("feature mask is empty");
  std::vector<PreparedTweet> train;
  std::vector<Tweet> raw;
  std::vector<int> y;
  for (std::size_t i : sentiment_rows(all)) {
    train.push_back(all[i]);
    raw.push_back(all[i].tweet);
    y.push_back(class_index(all[i].tweet.label));
  }
  if (train.empty()) throw EmptyTrainingSet();

  SentimentModel m;
  m.mask_ = cfg.mask;
  m.kind_ = cfg.model;
  m.seed_ = cfg.seed;
  m.params_ = default_params(cfg.model);
  for (const auto& [k, v] : cfg.params) m.params_[k] = v;
  m.encoder_ = CategoricalEncoder::fit(raw);

  std::vector<std::optional<std::array<double, 3>>> stacked(train.size());
  if (cfg.mask.has(8)) {
    std::vector<NormalizedTweet> texts;
    texts.reserve(train.size());
    for (const auto& t : train) texts.push_back(t.normalized);
    auto result = stacked_tfidf_feature(texts, y, cfg.stack_folds, cfg.seed, cfg.stack_alpha);
    for (std::size_t i = 0; i < train.size(); ++i) stacked[i] = result.out_of_fold[i];
    m.stacker_ = std::move(result.final_model);
  }

  Matrix X;
  X.reserve(train.size());
  {
    // Unscaled rows first; the SVM scale is fitted on them.
    const ModelKind kind = m.kind_;
    m.kind_ = ModelKind::nb;
    for (std::size_t i = 0; i < train.size(); ++i) X.push_back(m.feature_row(train[i], lex, stacked[i]));
    m.kind_ = kind;
  }
  if (m.kind_ == ModelKind::svm) {
    m.feature_scale_ = column_scale(X);
    for (auto& row : X) apply_scale(row, m.feature_scale_);
  }

  const Trainer trainer = trainer_for(m.kind_, cfg.seed);
  ParamSet chosen = m.params_;
  if (cfg.tune) {
    const ParamGrid grid =
        cfg.grid.empty() ? (m.kind_ == ModelKind::nb ? default_nb_grid() : default_svm_grid())
                         : cfg.grid;
    TuningSummary summary;
    summary.default_params = m.params_;
    summary.search = grid_search(expand_grid(grid), X, y, sentiment_class_names(), cfg.cv_folds,
                                 cfg.seed, trainer);
    summary.default_score = grid_search({m.params_}, X, y, sentiment_class_names(), cfg.cv_folds,
                                        cfg.seed, trainer)
                                .best_score;
    for (const auto& [k, v] : summary.search.best_params) chosen[k] = v;
    summary.search.final_model.reset();
    m.tuning_ = std::move(summary);
  }
  m.params_ = chosen;
  if (m.kind_ == ModelKind::nb) {
    m.nb_ = nb_train(X, y, sentiment_class_names(), nb_params_from(chosen));
  } else {
    m.svm_ = svm_train(X, y, sentiment_class_names(), svm_params_from(chosen, cfg.seed));
  }
  return m;
}

std::vector<ModelOutput> SentimentModel::predict(std::span<const PreparedTweet> tweets,
                                                 const LexiconBundle& lex) const {
  std::vector<ModelOutput> out;
  out.reserve(tweets.size());
  for (const auto& t : tweets) {
    std::optional<std::array<double, 3>> stacked;
    if (mask_.has(8)) stacked = stacker_.value().predict(t.normalized);
    ModelOutput o;
    o.features = extract_features(t.normalized, t.tweet, lex, t.url_sentiment, encoder_, stacked,
                                  mask_);
    auto row = flatten(o.features, encoder_);
    if (kind_ == ModelKind::nb) {
      const auto p = nb_predict(nb_.value(), row);
      o.label = class_label(p.label);
      o.posterior = std::array<double, 3>{p.posterior[0], p.posterior[1], p.posterior[2]};
    } else {
      apply_scale(row, feature_scale_);
      o.label = class_label(svm_predict(svm_.value(), row));
    }
    out.push_back(std::move(o));
  }
  return out;
}

nlohmann::ordered_json SentimentModel::to_json() const {
  nlohmann::ordered_json j;
  j["format_version"] = kFormatVersion;
  j["model"] = std::string(to_string(kind_));
  j["classes"] = sentiment_class_names();
  j["features"] = mask_.to_string();
  j["seed"] = seed_;
  j["hyperparams"] = params_;
  j["encoder"] = encoder_.to_json();
  j["tfidf_stacker"] = stacker_ ? nlohmann::ordered_json(stacker_->to_json()) : nullptr;
  if (nb_) j["nb"] = nb_->to_json();
  if (svm_) {
    j["svm"] = svm_->to_json();
    j["feature_scale"] = feature_scale_;
  }
  if (tuning_) {
    j["tuning"] = {{"search", tuning_->search.to_json()},
                   {"default_params", tuning_->default_params},
                   {"default_score", tuning_->default_score}};
  }
  return j;
}

SentimentModel SentimentModel::from_json(const nlohmann::json& j) {
  const int version = j.at("format_version").get<int>();
  if (version != kFormatVersion) throw UnknownFormatVersion(version);
  SentimentModel m;
  m.kind_ = parse_model_kind(j.at("model").get<std::string>());
  m.mask_ = FeatureMask::parse(j.at("features").get<std::string>());
  m.seed_ = j.at("seed").get<std::uint64_t>();
  m.params_ = j.at("hyperparams").get<ParamSet>();
  m.encoder_ = CategoricalEncoder::from_json(j.at("encoder"));
  if (!j.at("tfidf_stacker").is_null()) m.stacker_ = TfidfStacker::from_json(j.at("tfidf_stacker"));
  if (m.mask_.has(8) && !m.stacker_) throw Error("model enables f8 but has no tf-idf stacker");
  const std::size_t width = flattened_size(m.mask_, m.encoder_);
  if (m.kind_ == ModelKind::nb) {
    m.nb_ = NBModel::from_json(j.at("nb"));
    if (m.nb_->num_features() != width) throw DimensionMismatch(width, m.nb_->num_features());
  } else {
    m.svm_ = SVMModel::from_json(j.at("svm"));
    m.feature_scale_ = j.at("feature_scale").get<std::vector<double>>();
    if (m.svm_->num_features() != width) throw DimensionMismatch(width, m.svm_->num_features());
  }
  if (j.contains("tuning")) {
    const auto& t = j.at("tuning");
    TuningSummary s;
    s.default_params = t.at("default_params").get<ParamSet>();
    s.default_score = t.at("default_score").get<double>();
    const auto& g = t.at("search");
    s.search.seed = g.at("seed").get<std::uint64_t>();
    s.search.folds = g.at("folds").get<int>();
    s.search.best_params = g.at("best_params").get<ParamSet>();
    s.search.best_score = g.at("best_score").get<double>();
    for (const auto& row : g.at("table")) {
      s.search.table.emplace_back(row.at("params").get<ParamSet>(), row.at("score").get<double>());
    }
    m.tuning_ = std::move(s);
  }
  return m;
}

void SentimentModel::save(const std::filesystem::path& path) const {
  write_file_atomic(path, to_json().dump(1) + "\n");
}

SentimentModel SentimentModel::load(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": not a model file (" + e.what() + ")");
  }
  try {
    return from_json(j);
  } catch (const Error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": malformed model (" + e.what() + ")");
  }
}

}  // namespace tweetsense
