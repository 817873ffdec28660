#include <doctest.h>

#include <cmath>
#include <numeric>

#include "support.hpp"
#include "tweetsense/corpus.hpp"
#include "tweetsense/error.hpp"
#include "tweetsense/features.hpp"
#include "tweetsense/folds.hpp"
#include "tweetsense/labels.hpp"

using namespace tweetsense;

namespace {

NormalizedTweet doc(const std::vector<std::string>& words, std::string id = "d") {
  NormalizedTweet nt;
  nt.tweet_id = std::move(id);
  for (const auto& w : words) nt.tokens.push_back(Token{w, false, false, Pos::noun});
  return nt;
}

double norm2(const SparseRow& row) {
  double s = 0;
  for (const auto& [_, v] : row) s += v * v;
  return std::sqrt(s);
}

FeatureMask mask_of(std::initializer_list<int> families) {
  FeatureMask m;
  for (int f : families) m.set(f);
  return m;
}

}  // namespace

TEST_CASE("FeatureMask parsing") {
  CHECK(FeatureMask::parse("all") == FeatureMask::all());
  CHECK(FeatureMask::parse("f1, F2 ,f4").to_string() == "f1,f2,f4");
  CHECK(FeatureMask::parse("f9,f1").to_string() == "f1,f9");
  CHECK_THROWS_AS(FeatureMask::parse("f10"), InvalidArgument);
  CHECK_THROWS_AS(FeatureMask::parse("g1"), InvalidArgument);
  CHECK_THROWS_AS(FeatureMask::parse(""), InvalidArgument);
}

TEST_CASE("f2 counts polarity with negation flips") {
  const auto lex = testing::tiny_lexicons();
  const Tweet tweet{"1", "u", "t", Label::positive, "x"};
  CategoricalEncoder enc;
  NormalizedTweet nt = doc({"good"});
  auto fv = extract_features(nt, tweet, lex, {}, enc, std::nullopt, mask_of({2}));
  CHECK(fv.polarity == std::array<double, 4>{0, 0, 1, 0});
  nt.tokens[0].negated = true;
  fv = extract_features(nt, tweet, lex, {}, enc, std::nullopt, mask_of({2}));
  CHECK(fv.polarity == std::array<double, 4>{0, 0, 0, 1});
  nt = doc({"excellent", "bad", "bill"});
  nt.tokens[1].negated = true;
  fv = extract_features(nt, tweet, lex, {}, enc, std::nullopt, mask_of({2}));
  CHECK(fv.polarity == std::array<double, 4>{2, 0, 0, 0});
}

TEST_CASE("f2 flip property over random token lists") {
  const auto lex = testing::tiny_lexicons();
  const std::vector<std::string> pool = {"good", "nice", "excellent", "bad", "poor", "bill", "cat"};
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> words;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 6); i < n; ++i) words.push_back(pool[rng() % pool.size()]);
    auto nt = doc(words);
    for (auto& t : nt.tokens) t.negated = rng() % 2;
    const auto before = polarity_counts(nt.tokens, lex);
    const std::size_t idx = rng() % nt.tokens.size();
    nt.tokens[idx].negated = !nt.tokens[idx].negated;
    const auto after = polarity_counts(nt.tokens, lex);
    const auto total = [](const PolarityCounts& c) {
      return c.strong_pos + c.strong_neg + c.weak_pos + c.weak_neg;
    };
    CHECK(total(before) == total(after));
    const auto entry = lookup_polarity(lex, nt.tokens[idx].surface, Pos::noun);
    const long moved = std::labs(static_cast<long>(before.strong_pos) - static_cast<long>(after.strong_pos)) +
                       std::labs(static_cast<long>(before.weak_pos) - static_cast<long>(after.weak_pos));
    if (!entry || entry->polarity == Polarity::neutral) {
      CHECK(moved == 0);
    } else {
      CHECK(moved == 1);
    }
  }
}

TEST_CASE("twitter, hashtag and capitalization families") {
  const auto& lex = testing::shipped_lexicons();
  const Tweet tweet{"1", "u", "t", Label::negative,
                    "RT @sen WE WANT CHANGE now #hcr #tcot"};
  const auto nt = normalize_tweet(tweet, lex, testing::shipped_tagger());
  const auto fv = extract_features(nt, tweet, lex, {}, CategoricalEncoder{}, std::nullopt,
                                   FeatureMask::parse("f3,f6,f7"));
  CHECK(fv.twitter == std::array<double, 2>{1, 1});
  CHECK(fv.hashtags == 2);
  CHECK(fv.capitalized == 3);
  CHECK(fv.polarity == std::array<double, 4>{});
}

TEST_CASE("f8 must be supplied when enabled") {
  CHECK_THROWS_AS(extract_features(doc({"a"}), Tweet{}, testing::tiny_lexicons(), {},
                                   CategoricalEncoder{}, std::nullopt, mask_of({8})),
                  InvalidArgument);
}

TEST_CASE("CategoricalEncoder") {
  std::vector<Tweet> tweets = {{"1", "bob", "hcr", Label::positive, "x"},
                               {"2", "amy", "hcr", Label::positive, "x"},
                               {"3", "bob", "obamacare", Label::positive, "x"}};
  const auto enc = CategoricalEncoder::fit(tweets);
  CHECK(enc.user_index("amy") == 1);
  CHECK(enc.user_index("bob") == 2);
  CHECK(enc.user_index("zed") == 0);
  CHECK(enc.target_index("hcr") == 1);
  CHECK(enc.user_slots() == 3);
  CHECK(enc.target_slots() == 3);
  CHECK(CategoricalEncoder::from_json(enc.to_json()) == enc);
}

TEST_CASE("flattened width depends only on mask and encoder") {
  const auto& lex = testing::shipped_lexicons();
  const auto c = load_corpus(testing::fixtures_dir() / "synthetic" / "test.tsv", true);
  const auto enc = CategoricalEncoder::fit(c.tweets);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    FeatureMask m;
    for (int f = 1; f <= 9; ++f) {
      if (f != 8 && rng() % 2) m.set(f);
    }
    if (m.empty()) m.set(1);
    const auto names = flattened_names(m, enc);
    CHECK(names.size() == flattened_size(m, enc));
    for (std::size_t i = 0; i < 10; ++i) {
      const auto& t = c.tweets[(static_cast<std::size_t>(trial) * 7 + i) % c.size()];
      const auto nt = normalize_tweet(t, lex, testing::shipped_tagger());
      const auto row = flatten(extract_features(nt, t, lex, {0.2, 0.3, 0.5}, enc, std::nullopt, m), enc);
      CHECK(row.size() == flattened_size(m, enc));
      for (double v : row) CHECK(v >= 0.0);
    }
    for (int f = 1; f <= 9; ++f) {
      const std::string prefix = "f" + std::to_string(f) + ".";
      const bool present = std::any_of(names.begin(), names.end(),
                                       [&](const std::string& n) { return n.rfind(prefix, 0) == 0; });
      CHECK(present == m.has(f));
    }
  }
}

TEST_CASE("flatten scales fractions and one-hot encodes users") {
  std::vector<Tweet> tweets = {{"1", "bob", "hcr", Label::positive, "x"}};
  const auto enc = CategoricalEncoder::fit(tweets);
  const auto fv = extract_features(doc({}), tweets[0], testing::tiny_lexicons(), {0.25, 0.75, 0},
                                   enc, std::array<double, 3>{0.1, 0.2, 0.7},
                                   FeatureMask::parse("f5,f8,f9"));
  const auto row = flatten(fv, enc);
  const std::vector<double> want = {2.5, 7.5, 0, 1, 2, 7, 0, 1, 0, 1};
  REQUIRE(row.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(row[i] == doctest::Approx(want[i]));
}

TEST_CASE("tf-idf weights") {
  const std::vector<NormalizedTweet> docs = {doc({"bill", "vote"}), doc({"bill"}), doc({"bill", "law"})};
  const auto m = tfidf_fit(docs);
  CHECK(m.doc_count == 3);
  CHECK(m.vocabulary.at("bill") == 0);
  CHECK(m.vocabulary.at("law") == 1);
  CHECK(m.vocabulary.at("vote") == 2);
  CHECK(m.idf[0] == 1.0);
  CHECK(std::abs(m.idf[2] - (std::log(2.0) + 1.0)) < 1e-12);
  CHECK(std::abs(m.idf[2] - 1.6931471805599454) < 1e-12);

  CHECK(tfidf_transform(m, doc({"unknown"})).empty());
  const auto one = tfidf_transform(m, doc({"law"}));
  REQUIRE(one.size() == 1);
  CHECK(one[0].first == 1);
  CHECK(one[0].second == doctest::Approx(1.0));

  // Equal idf: "bill bill vote" in a corpus where both terms have df = 1.
  const std::vector<NormalizedTweet> even = {doc({"bill", "vote"}), doc({"x"})};
  const auto me = tfidf_fit(even);
  const auto row = tfidf_transform(me, doc({"bill", "bill", "vote"}));
  REQUIRE(row.size() == 2);
  CHECK(std::abs(row[0].second - 2.0 / std::sqrt(5.0)) < 1e-12);
  CHECK(std::abs(row[1].second - 1.0 / std::sqrt(5.0)) < 1e-12);

  CHECK_THROWS_AS(tfidf_fit(std::vector<NormalizedTweet>{}), EmptyCorpus);
  CHECK(TfidfModel::from_json(m.to_json()).vocabulary == m.vocabulary);
}

TEST_CASE("tf-idf is deterministic over token multisets") {
  const std::vector<NormalizedTweet> a = {doc({"x", "y", "y"}), doc({"z"})};
  const std::vector<NormalizedTweet> b = {doc({"y", "x", "y"}), doc({"z"})};
  CHECK(tfidf_fit(a).to_json() == tfidf_fit(b).to_json());
}

TEST_CASE("tf-idf hashtags contribute their segments and the whole tag") {
  NormalizedTweet nt = doc({"kill", "bill"});
  nt.artifacts.hashtags = {"KillBill"};
  const auto terms = tfidf_terms(nt);
  CHECK(terms == std::vector<std::string>{"kill", "bill", "#killbill"});
}

TEST_CASE("stacking on a separable toy corpus") {
  std::vector<NormalizedTweet> docs;
  std::vector<int> labels;
  // Every tweet uses three of its class's four words, so the classes share
  // no vocabulary at all.
  const std::vector<std::vector<std::string>> vocab = {{"repeal", "defund", "socialism", "tyranny"},
                                                       {"hearing", "schedule", "agenda", "session"},
                                                       {"coverage", "enroll", "clinic", "relief"}};
  std::mt19937 rng(5);
  for (int i = 0; i < 60; ++i) {
    const int k = i % 3;
    auto words = vocab[static_cast<std::size_t>(k)];
    words.erase(words.begin() + static_cast<long>(rng() % 4));
    docs.push_back(doc(words));
    labels.push_back(k);
  }
  const auto r = stacked_tfidf_feature(docs, labels, 5, 42);
  std::size_t confident = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto& p = r.out_of_fold[i];
    CHECK(p[0] + p[1] + p[2] == doctest::Approx(1.0).epsilon(1e-9));
    if (p[static_cast<std::size_t>(labels[i])] >= 0.9) ++confident;
  }
  CHECK(confident * 10 >= docs.size() * 9);
  const auto again = stacked_tfidf_feature(docs, labels, 5, 42);
  CHECK(again.out_of_fold == r.out_of_fold);
  CHECK(again.folds == r.folds);
}

TEST_CASE("leave-one-out stacking on three tweets") {
  const std::vector<NormalizedTweet> docs = {doc({"bad", "bill"}), doc({"vote", "today"}),
                                             doc({"good", "bill"})};
  const std::vector<int> labels = {0, 1, 2};
  const std::vector<int> folds = {0, 1, 2};
  const auto r = stacked_tfidf_feature(docs, labels, folds);
  for (std::size_t held = 0; held < 3; ++held) {
    std::vector<NormalizedTweet> rest;
    std::vector<int> rest_labels;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == held) continue;
      rest.push_back(docs[j]);
      rest_labels.push_back(labels[j]);
    }
    const auto tf = tfidf_fit(rest);
    std::vector<SparseRow> X;
    for (const auto& d : rest) X.push_back(tfidf_transform(tf, d));
    NBParams p;
    p.prior_mode = PriorMode::uniform;
    const auto nb = nb_train_sparse(X, tf.vocabulary.size(), rest_labels, sentiment_class_names(), p);
    const auto want = nb_predict(nb, tfidf_transform(tf, docs[held])).posterior;
    for (std::size_t k = 0; k < 3; ++k) CHECK(r.out_of_fold[held][k] == doctest::Approx(want[k]).epsilon(1e-12));
  }
}

TEST_CASE("stacking errors") {
  const std::vector<NormalizedTweet> docs = {doc({"a"}), doc({"b"}), doc({"c"}), doc({"d"})};
  CHECK_THROWS_AS(stacked_tfidf_feature(docs, std::vector<int>{0, 0, 1, 1}, 2, 1), ClassMissingInFold);
  CHECK_THROWS_AS(stacked_tfidf_feature(docs, std::vector<int>{0, 1, 2, 0}, 1, 1), InvalidArgument);
}

TEST_CASE("a tweet's own label never reaches its f8 value") {
  const auto& lex = testing::shipped_lexicons();
  const auto c = load_corpus(testing::fixtures_dir() / "stacking30.tsv", true);
  std::vector<NormalizedTweet> docs;
  std::vector<int> labels;
  for (const auto& t : c.tweets) {
    docs.push_back(normalize_tweet(t, lex, testing::shipped_tagger()));
    labels.push_back(class_index(t.label));
  }
  const auto folds = stratified_folds(labels, 5, 42);
  const auto base = stacked_tfidf_feature(docs, labels, folds);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (int shift = 1; shift < 3; ++shift) {
      auto flipped = labels;
      flipped[i] = (labels[i] + shift) % 3;
      const auto r = stacked_tfidf_feature(docs, flipped, folds);
      for (std::size_t j = 0; j < docs.size(); ++j) {
        if (folds[j] == folds[i]) CHECK(r.out_of_fold[j] == base.out_of_fold[j]);
      }
    }
  }
}
