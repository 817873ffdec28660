#include "tweetsense/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tweetsense/error.hpp"
#include "tweetsense/folds.hpp"
#include "tweetsense/lexicons.hpp"
#include "tweetsense/text.hpp"

namespace tweetsense {

FeatureMask FeatureMask::all() {
  FeatureMask m;
  for (int f = 1; f <= kFamilies; ++f) m.set(f);
  return m;
}

FeatureMask& FeatureMask::set(int family, bool on) {
  if (family < 1 || family > kFamilies) {
    throw InvalidArgument("feature family f" + std::to_string(family) + " does not exist");
  }
  bits_.set(static_cast<std::size_t>(family), on);
  return *this;
}

FeatureMask FeatureMask::parse(std::string_view text) {
  const std::string lower = to_lower(trim(text));
  if (lower == "all") return all();
  FeatureMask m;
  for (const auto& raw : split(lower, ',')) {
    const auto item = trim(raw);
    if (item.empty()) continue;
    if (item.size() != 2 || item[0] != 'f' || item[1] < '1' || item[1] > '9') {
      throw InvalidArgument("bad feature family '" + std::string(item) + "' (expected f1..f9)");
    }
    m.set(item[1] - '0');
  }
  if (m.empty()) throw InvalidArgument("feature mask is empty");
  return m;
}

std::string FeatureMask::to_string() const {
  std::vector<std::string> parts;
  for (int f = 1; f <= kFamilies; ++f) {
    if (has(f)) parts.push_back("f" + std::to_string(f));
  }
  return join(parts, ",");
}

PolarityCounts polarity_counts(const std::vector<Token>& tokens, const LexiconBundle& lex) {
  PolarityCounts c;
  for (const auto& t : tokens) {
    auto e = lookup_polarity(lex, t.surface, t.pos.value_or(Pos::other));
    if (!e || e->polarity == Polarity::neutral) continue;
    bool positive = e->polarity == Polarity::positive;
    if (t.negated) positive = !positive;
    const bool strong = e->strength == Strength::strong;
    if (positive) {
      ++(strong ? c.strong_pos : c.weak_pos);
    } else {
      ++(strong ? c.strong_neg : c.weak_neg);
    }
  }
  return c;
}

CategoricalEncoder CategoricalEncoder::fit(std::span<const Tweet> tweets) {
  std::set<std::string> users;
  std::set<std::string> targets;
  for (const auto& t : tweets) {
    users.insert(t.user_id);
    targets.insert(t.target);
  }
  CategoricalEncoder enc;
  std::size_t next = 1;
  for (const auto& u : users) enc.users_[u] = next++;
  next = 1;
  for (const auto& t : targets) enc.targets_[t] = next++;
  return enc;
}

std::size_t CategoricalEncoder::user_index(const std::string& user_id) const {
  auto it = users_.find(user_id);
  return it == users_.end() ? 0 : it->second;
}

std::size_t CategoricalEncoder::target_index(const std::string& target) const {
  auto it = targets_.find(target);
  return it == targets_.end() ? 0 : it->second;
}

nlohmann::json CategoricalEncoder::to_json() const {
  // Indices follow sorted order, so the sorted key lists are enough.
  std::vector<std::string> users;
  for (const auto& [u, _] : users_) users.push_back(u);
  std::vector<std::string> targets;
  for (const auto& [t, _] : targets_) targets.push_back(t);
  return {{"users", users}, {"targets", targets}};
}

CategoricalEncoder CategoricalEncoder::from_json(const nlohmann::json& j) {
  CategoricalEncoder enc;
  std::size_t next = 1;
  for (const auto& u : j.at("users").get<std::vector<std::string>>()) enc.users_[u] = next++;
  next = 1;
  for (const auto& t : j.at("targets").get<std::vector<std::string>>()) enc.targets_[t] = next++;
  return enc;
}

FeatureVector extract_features(const NormalizedTweet& nt, const Tweet& tweet,
                               const LexiconBundle& lex, const UrlSentiment& url_sentiment,
                               const CategoricalEncoder& encoder,
                               const std::optional<std::array<double, 3>>& stacked,
                               FeatureMask mask) {
  FeatureVector fv;
  fv.mask = mask;
  const auto& a = nt.artifacts;
  if (mask.has(1)) {
    for (const auto& t : nt.tokens) {
      if (!t.pos) continue;
      switch (*t.pos) {
        case Pos::noun: fv.pos_tags[0] += 1; break;
        case Pos::adj: fv.pos_tags[1] += 1; break;
        case Pos::adv: fv.pos_tags[2] += 1; break;
        case Pos::verb: fv.pos_tags[3] += 1; break;
        default: break;
      }
    }
  }
  if (mask.has(2)) {
    const auto c = polarity_counts(nt.tokens, lex);
    fv.polarity = {static_cast<double>(c.strong_pos), static_cast<double>(c.strong_neg),
                   static_cast<double>(c.weak_pos), static_cast<double>(c.weak_neg)};
  }
  if (mask.has(3)) {
    fv.twitter = {a.is_retweet ? 1.0 : 0.0, a.mentions.empty() ? 0.0 : 1.0};
  }
  if (mask.has(4)) {
    fv.emoticons = {static_cast<double>(a.pos_emoticons), static_cast<double>(a.neg_emoticons)};
  }
  if (mask.has(5)) {
    fv.url_sentiment = {url_sentiment.frac_pos, url_sentiment.frac_neg, url_sentiment.frac_neu};
  }
  if (mask.has(6)) fv.hashtags = static_cast<double>(a.hashtags.size());
  if (mask.has(7)) fv.capitalized = static_cast<double>(a.capitalized);
  if (mask.has(8)) {
    if (!stacked) throw InvalidArgument("f8 is enabled but no stacked prediction was given");
    fv.stacked = stacked;
  }
  if (mask.has(9)) {
    fv.user_index = encoder.user_index(tweet.user_id);
    fv.target_index = encoder.target_index(tweet.target);
  }
  return fv;
}

std::size_t flattened_size(FeatureMask mask, const CategoricalEncoder& encoder) {
  std::size_t n = 0;
  if (mask.has(1)) n += 4;
  if (mask.has(2)) n += 4;
  if (mask.has(3)) n += 2;
  if (mask.has(4)) n += 2;
  if (mask.has(5)) n += 3;
  if (mask.has(6)) n += 1;
  if (mask.has(7)) n += 1;
  if (mask.has(8)) n += 3;
  if (mask.has(9)) n += encoder.user_slots() + encoder.target_slots();
  return n;
}

std::vector<std::string> flattened_names(FeatureMask mask, const CategoricalEncoder& encoder) {
  std::vector<std::string> names;
  auto add = [&names](std::initializer_list<const char*> list) {
    for (const char* s : list) names.emplace_back(s);
  };
  if (mask.has(1)) add({"f1.noun", "f1.adj", "f1.adv", "f1.verb"});
  if (mask.has(2)) add({"f2.strong_pos", "f2.strong_neg", "f2.weak_pos", "f2.weak_neg"});
  if (mask.has(3)) add({"f3.is_retweet", "f3.has_mention"});
  if (mask.has(4)) add({"f4.pos_emoticons", "f4.neg_emoticons"});
  if (mask.has(5)) add({"f5.frac_pos", "f5.frac_neg", "f5.frac_neu"});
  if (mask.has(6)) add({"f6.hashtags"});
  if (mask.has(7)) add({"f7.capitalized"});
  if (mask.has(8)) add({"f8.negative", "f8.neutral", "f8.positive"});
  if (mask.has(9)) {
    for (std::size_t i = 0; i < encoder.user_slots(); ++i) names.push_back("f9.user" + std::to_string(i));
    for (std::size_t i = 0; i < encoder.target_slots(); ++i) {
      names.push_back("target" + std::to_string(i));
    }
  }
  return names;
}

std::vector<double> flatten(const FeatureVector& fv, const CategoricalEncoder& encoder) {
  const FeatureMask& mask = fv.mask;
  std::vector<double> out;
  out.reserve(flattened_size(mask, encoder));
  auto append = [&out](const auto& values, double scale) {
    for (double v : values) out.push_back(v * scale);
  };
  if (mask.has(1)) append(fv.pos_tags, 1.0);
  if (mask.has(2)) append(fv.polarity, 1.0);
  if (mask.has(3)) append(fv.twitter, 1.0);
  if (mask.has(4)) append(fv.emoticons, 1.0);
  if (mask.has(5)) append(fv.url_sentiment, kFractionScale);
  if (mask.has(6)) out.push_back(fv.hashtags);
  if (mask.has(7)) out.push_back(fv.capitalized);
  if (mask.has(8)) append(fv.stacked.value(), kFractionScale);
  if (mask.has(9)) {
    const std::size_t user_start = out.size();
    out.resize(out.size() + encoder.user_slots(), 0.0);
    out[user_start + std::min(fv.user_index, encoder.user_slots() - 1)] = 1.0;
    const std::size_t target_start = out.size();
    out.resize(out.size() + encoder.target_slots(), 0.0);
    out[target_start + std::min(fv.target_index, encoder.target_slots() - 1)] = 1.0;
  }
  return out;
}

std::vector<std::string> tfidf_terms(const NormalizedTweet& nt) {
  std::vector<std::string> terms;
  terms.reserve(nt.tokens.size() + nt.artifacts.hashtags.size());
  for (const auto& t : nt.tokens) terms.push_back(t.surface);
  for (const auto& h : nt.artifacts.hashtags) terms.push_back("#" + to_lower(h));
  return terms;
}

TfidfModel tfidf_fit(std::span<const NormalizedTweet> corpus) {
  if (corpus.empty()) throw EmptyCorpus();
  std::map<std::string, std::size_t> df;
  for (const auto& nt : corpus) {
    const auto terms = tfidf_terms(nt);
    const std::set<std::string> unique(terms.begin(), terms.end());
    for (const auto& t : unique) ++df[t];
  }
  TfidfModel m;
  m.doc_count = corpus.size();
  const double n = static_cast<double>(m.doc_count);
  std::size_t col = 0;
  for (const auto& [term, count] : df) {
    m.vocabulary[term] = col++;
    m.idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return m;
}

SparseRow tfidf_transform(const TfidfModel& model, const NormalizedTweet& nt) {
  std::map<std::size_t, double> tf;
  for (const auto& term : tfidf_terms(nt)) {
    auto it = model.vocabulary.find(term);
    if (it != model.vocabulary.end()) tf[it->second] += 1.0;
  }
  SparseRow row;
  double norm_sq = 0.0;
  for (const auto& [col, count] : tf) {
    const double w = count * model.idf[col];
    row.emplace_back(col, w);
    norm_sq += w * w;
  }
  if (norm_sq > 0.0) {
    const double norm = std::sqrt(norm_sq);
    for (auto& [_, w] : row) w /= norm;
  }
  return row;
}

nlohmann::json TfidfModel::to_json() const {
  std::vector<std::string> terms(vocabulary.size());
  for (const auto& [term, col] : vocabulary) terms[col] = term;
  return {{"terms", terms}, {"idf", idf}, {"doc_count", doc_count}};
}

TfidfModel TfidfModel::from_json(const nlohmann::json& j) {
  TfidfModel m;
  const auto terms = j.at("terms").get<std::vector<std::string>>();
  for (std::size_t i = 0; i < terms.size(); ++i) m.vocabulary[terms[i]] = i;
  m.idf = j.at("idf").get<std::vector<double>>();
  m.doc_count = j.at("doc_count").get<std::size_t>();
  if (m.idf.size() != terms.size()) throw Error("tf-idf model: idf/term count mismatch");
  return m;
}

std::array<double, 3> TfidfStacker::predict(const NormalizedTweet& nt) const {
  const auto p = nb_predict(nb, tfidf_transform(tfidf, nt));
  return {p.posterior[0], p.posterior[1], p.posterior[2]};
}

nlohmann::json TfidfStacker::to_json() const {
  return {{"tfidf", tfidf.to_json()}, {"nb", nb.to_json()}};
}

TfidfStacker TfidfStacker::from_json(const nlohmann::json& j) {
  return {TfidfModel::from_json(j.at("tfidf")), NBModel::from_json(j.at("nb"))};
}

namespace {

// Fits the stacker on the given rows. A class absent from these rows
// switches that fit to uniform priors so the absent class keeps its
// smoothing-only likelihoods instead of an impossible zero prior.
TfidfStacker fit_stacker(std::span<const NormalizedTweet> tweets, std::span<const int> labels,
                         const std::vector<std::size_t>& rows, double alpha) {
  std::vector<NormalizedTweet> subset;
  std::vector<int> y;
  std::array<std::size_t, 3> seen{};
  for (std::size_t i : rows) {
    subset.push_back(tweets[i]);
    y.push_back(labels[i]);
    ++seen[static_cast<std::size_t>(labels[i])];
  }
  TfidfStacker s;
  s.tfidf = tfidf_fit(subset);
  std::vector<SparseRow> X;
  X.reserve(subset.size());
  for (const auto& nt : subset) X.push_back(tfidf_transform(s.tfidf, nt));

  NBParams params;
  params.alpha = alpha;
  const bool all_present = std::all_of(seen.begin(), seen.end(), [](std::size_t n) { return n > 0; });
  params.prior_mode = all_present ? PriorMode::empirical : PriorMode::uniform;
  s.nb = nb_train_sparse(X, s.tfidf.vocabulary.size(), y, sentiment_class_names(), params);
  return s;
}

void check_stacking_input(std::span<const NormalizedTweet> train, std::span<const int> labels) {
  if (train.empty()) throw EmptyTrainingSet();
  if (train.size() != labels.size()) throw LengthMismatch(train.size(), labels.size());
  std::array<std::size_t, 3> seen{};
  for (int l : labels) {
    if (l < 0 || l >= kNumSentimentClasses) throw InvalidArgument("label index out of range");
    ++seen[static_cast<std::size_t>(l)];
  }
  for (int k = 0; k < kNumSentimentClasses; ++k) {
    if (seen[static_cast<std::size_t>(k)] == 0) {
      throw ClassMissingInFold(std::string(to_string(class_label(k))));
    }
  }
}

}  // namespace

StackingResult stacked_tfidf_feature(std::span<const NormalizedTweet> train,
                                     std::span<const int> labels, std::span<const int> folds,
                                     double alpha) {
  check_stacking_input(train, labels);
  if (folds.size() != train.size()) throw LengthMismatch(folds.size(), train.size());
  const int k = folds.empty() ? 0 : *std::max_element(folds.begin(), folds.end()) + 1;
  if (k < 2) throw InvalidArgument("stacking needs at least 2 folds");

  StackingResult result;
  result.folds.assign(folds.begin(), folds.end());
  result.out_of_fold.resize(train.size());
  for (int f = 0; f < k; ++f) {
    const auto held_out = fold_members(folds, f);
    if (held_out.empty()) continue;
    const auto rows = fold_complement(folds, f);
    if (rows.empty()) throw InvalidArgument("a fold covers every training tweet");
    const TfidfStacker s = fit_stacker(train, labels, rows, alpha);
    for (std::size_t i : held_out) result.out_of_fold[i] = s.predict(train[i]);
  }

  std::vector<std::size_t> all(train.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  result.final_model = fit_stacker(train, labels, all, alpha);
  return result;
}

StackingResult stacked_tfidf_feature(std::span<const NormalizedTweet> train,
                                     std::span<const int> labels, int k, std::uint64_t seed,
                                     double alpha) {
  check_stacking_input(train, labels);
  const auto folds = stratified_folds(labels, k, seed);
  return stacked_tfidf_feature(train, labels, folds, alpha);
}

}  // namespace tweetsense
