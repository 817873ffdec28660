#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "support.hpp"
#include "tweetsense/corpus.hpp"
#include "tweetsense/error.hpp"
#include "tweetsense/features.hpp"
#include "tweetsense/folds.hpp"
#include "tweetsense/grid_search.hpp"
#include "tweetsense/labels.hpp"
#include "tweetsense/naive_bayes.hpp"
#include "tweetsense/svm.hpp"

using namespace tweetsense;

namespace {

const std::vector<std::string> kAB = {"A", "B"};

struct Fixture {
  Matrix X;
  std::vector<int> y;
};

// The synthetic training split flattened with every family except f5/f8.
const Fixture& synthetic_rows() {
  static const Fixture fx = [] {
    const auto& lex = testing::shipped_lexicons();
    const auto c = filter_labels(load_corpus(testing::fixtures_dir() / "synthetic" / "train.tsv", true));
    const auto enc = CategoricalEncoder::fit(c.tweets);
    const auto mask = FeatureMask::parse("f1,f2,f3,f4,f6,f7,f9");
    Fixture out;
    for (const auto& t : c.tweets) {
      const auto nt = normalize_tweet(t, lex, testing::shipped_tagger());
      out.X.push_back(flatten(extract_features(nt, t, lex, {}, enc, std::nullopt, mask), enc));
      out.y.push_back(class_index(t.label));
    }
    return out;
  }();
  return fx;
}

// Mean macro-F1 of NB over the given folds, scored with the test oracle.
double cv_macro_f1_oracle(const Fixture& fx, const std::vector<int>& folds, int k, double alpha) {
  double sum = 0;
  for (int f = 0; f < k; ++f) {
    Matrix tx;
    std::vector<int> ty;
    for (std::size_t i = 0; i < fx.X.size(); ++i) {
      if (folds[i] != f) {
        tx.push_back(fx.X[i]);
        ty.push_back(fx.y[i]);
      }
    }
    NBParams p;
    p.alpha = alpha;
    const auto m = nb_train(tx, ty, sentiment_class_names(), p);
    std::vector<std::vector<std::size_t>> cm(3, std::vector<std::size_t>(3, 0));
    for (std::size_t i = 0; i < fx.X.size(); ++i) {
      if (folds[i] == f) ++cm[static_cast<std::size_t>(fx.y[i])][static_cast<std::size_t>(nb_predict(m, fx.X[i]).label)];
    }
    const auto om = testing::metrics_from_confusion(cm);
    sum += (om.f1[0] + om.f1[1] + om.f1[2]) / 3.0;
  }
  return sum / k;
}

}  // namespace

TEST_CASE("NB posterior on the two-feature toy matches enumeration") {
  const Matrix X = {{2, 0}, {0, 2}};
  const std::vector<int> y = {0, 1};
  NBParams p;
  const auto m = nb_train(X, y, kAB, p);
  const auto pred = nb_predict(m, std::vector<double>{1, 0});
  // p(x1|A) = 3/4, p(x1|B) = 1/4, equal priors.
  CHECK(pred.label == 0);
  CHECK(std::abs(pred.posterior[0] - 0.75) < 1e-12);
  CHECK(std::abs(pred.posterior[1] - 0.25) < 1e-12);
  const auto oracle = testing::nb_posterior_oracle({{2, 0}, {0, 2}}, y, 2, 1.0, false, {1, 0});
  CHECK(std::abs(pred.posterior[0] - oracle[0]) < 1e-12);
}

TEST_CASE("NB agrees with the product oracle on random small instances") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int K = 2 + static_cast<int>(rng() % 2);
    const std::size_t n = 1 + rng() % 3;
    const std::size_t rows = static_cast<std::size_t>(K) + rng() % 6;
    std::vector<std::vector<double>> X(rows, std::vector<double>(n));
    std::vector<int> y(rows);
    for (std::size_t d = 0; d < rows; ++d) {
      y[d] = d < static_cast<std::size_t>(K) ? static_cast<int>(d) : static_cast<int>(rng() % K);
      for (auto& v : X[d]) v = static_cast<double>(rng() % 6);
    }
    std::vector<double> x(n);
    for (auto& v : x) v = static_cast<double>(rng() % 6);
    const double alpha = trial % 2 ? 0.5 : 1.0;
    const bool uniform = trial % 3 == 0;
    NBParams p;
    p.alpha = alpha;
    p.prior_mode = uniform ? PriorMode::uniform : PriorMode::empirical;
    std::vector<std::string> names(static_cast<std::size_t>(K), "c");
    const auto got = nb_predict(nb_train(X, y, names, p), x).posterior;
    const auto want = testing::nb_posterior_oracle(X, y, K, alpha, uniform, x);
    for (int k = 0; k < K; ++k) {
      CHECK(std::abs(got[static_cast<std::size_t>(k)] - want[static_cast<std::size_t>(k)]) <=
            1e-9 * want[static_cast<std::size_t>(k)] + 1e-300);
    }
  }
}

TEST_CASE("NB trivial cases") {
  SUBCASE("one class with uniform prior always wins") {
    NBParams p;
    p.prior_mode = PriorMode::uniform;
    const auto m = nb_train(Matrix{{1, 2}, {0, 3}}, std::vector<int>{0, 0}, {"only"}, p);
    CHECK(nb_predict(m, std::vector<double>{5, 0}).label == 0);
    CHECK(nb_predict(m, std::vector<double>{0, 0}).posterior[0] == doctest::Approx(1.0));
  }
  SUBCASE("empty vector falls back to the majority prior") {
    const auto m = nb_train(Matrix{{1, 0}, {0, 1}, {1, 1}}, std::vector<int>{1, 0, 1}, kAB, NBParams{});
    CHECK(nb_predict(m, std::vector<double>{0, 0}).label == 1);
  }
  SUBCASE("ties go to the lower class index") {
    const auto m = nb_train(Matrix{{1, 0}, {0, 1}}, std::vector<int>{0, 1}, kAB, NBParams{});
    CHECK(nb_predict(m, std::vector<double>{1, 1}).label == 0);
    CHECK(argmax_first(std::vector<double>{2, 2, 1}) == 0);
    CHECK(argmax_first(std::vector<double>{1, 3, 3}) == 1);
  }
}

TEST_CASE("NB model invariants") {
  std::mt19937 rng(9);
  Matrix X(30, std::vector<double>(6));
  std::vector<int> y(30);
  for (std::size_t d = 0; d < 30; ++d) {
    y[d] = static_cast<int>(d % 3);
    for (auto& v : X[d]) v = static_cast<double>(rng() % 4);
  }
  const auto m = nb_train(X, y, sentiment_class_names(), NBParams{0.3});
  double prior_sum = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    prior_sum += std::exp(m.log_prior[k]);
    double s = 0;
    for (double l : m.log_likelihood[k]) {
      CHECK(std::isfinite(l));
      s += std::exp(l);
    }
    CHECK(std::abs(s - 1.0) < 1e-9);
  }
  CHECK(std::abs(prior_sum - 1.0) < 1e-9);

  Matrix X2 = X;
  X2.insert(X2.end(), X.begin(), X.end());
  std::vector<int> y2 = y;
  y2.insert(y2.end(), y.begin(), y.end());
  const auto m2 = nb_train(X2, y2, sentiment_class_names(), NBParams{0.3});
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(6);
    for (auto& v : x) v = static_cast<double>(rng() % 5);
    const auto a = nb_predict(m, x);
    const auto b = nb_predict(m2, x);
    CHECK(a.label == b.label);
    CHECK(std::accumulate(a.posterior.begin(), a.posterior.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
  }

  const auto back = NBModel::from_json(m.to_json());
  CHECK(back.log_likelihood == m.log_likelihood);
  CHECK(back.log_prior == m.log_prior);
  CHECK(back.classes == m.classes);
}

TEST_CASE("NB custom prior weights are normalised") {
  NBParams p;
  p.prior_mode = PriorMode::custom;
  p.custom_weights = {1, 3};
  const auto m = nb_train(Matrix{{1}, {1}}, std::vector<int>{0, 1}, kAB, p);
  CHECK(std::exp(m.log_prior[1]) == doctest::Approx(0.75));
  p.custom_weights = {1};
  CHECK_THROWS_AS(nb_train(Matrix{{1}, {1}}, std::vector<int>{0, 1}, kAB, p), InvalidArgument);
}

TEST_CASE("NB errors") {
  CHECK_THROWS_AS(nb_train(Matrix{}, std::vector<int>{}, kAB, NBParams{}), EmptyTrainingSet);
  CHECK_THROWS_AS(nb_train(Matrix{{1, -1}}, std::vector<int>{0}, kAB, NBParams{}), NegativeFeature);
  CHECK_THROWS_AS(nb_train(Matrix{{1, NAN}}, std::vector<int>{0}, kAB, NBParams{}), NonFiniteFeature);
  CHECK_THROWS_AS(nb_train(Matrix{{1, 0}}, std::vector<int>{0}, kAB, NBParams{}), MissingClass);
  NBParams uniform;
  uniform.prior_mode = PriorMode::uniform;
  CHECK_NOTHROW(nb_train(Matrix{{1, 0}}, std::vector<int>{0}, kAB, uniform));
  CHECK_THROWS_AS(nb_train(Matrix{{1}, {1}}, std::vector<int>{0, 1}, kAB, NBParams{0.0}), InvalidArgument);
  CHECK_THROWS_AS(nb_train(Matrix{{1}, {1}}, std::vector<int>{0, 1}, kAB, NBParams{-1.0}), InvalidArgument);
  const auto m = nb_train(Matrix{{1, 0}, {0, 1}}, std::vector<int>{0, 1}, kAB, NBParams{});
  CHECK_THROWS_AS(nb_predict(m, std::vector<double>{1, 0, 0}), DimensionMismatch);
  CHECK_THROWS_AS(parse_prior_mode("flat"), InvalidArgument);
}

TEST_CASE("SVM on a separable toy") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix X;
  std::vector<int> y;
  for (int i = 0; i < 80; ++i) {
    const int k = i % 2;
    const double a = u(rng), b = u(rng);
    X.push_back(k == 0 ? std::vector<double>{1.0 + a, b * 0.5} : std::vector<double>{b * 0.5, 1.0 + a});
    y.push_back(k);
  }
  SVMParams hyper;
  hyper.eta0 = 0.1;
  hyper.epochs = 50;
  const auto m = svm_train(X, y, kAB, hyper);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < X.size(); ++i) correct += svm_predict(m, X[i]) == y[i];
  CHECK(correct == X.size());
  CHECK(svm_predict(m, std::vector<double>{2, 0}) == 0);
  CHECK(svm_predict(m, std::vector<double>{0, 2}) == 1);
  for (const auto& w : m.weights) {
    for (double v : w) CHECK(std::isfinite(v));
  }

  const auto again = svm_train(X, y, kAB, hyper);
  CHECK(again.weights == m.weights);
  CHECK(again.bias == m.bias);

  hyper.lambda = 1e4;
  hyper.eta0 = 1e-3;
  const auto shrunk = svm_train(X, y, kAB, hyper);
  for (const auto& w : shrunk.weights) {
    for (double v : w) CHECK(std::abs(v) < 1e-3);
  }

  const auto back = SVMModel::from_json(m.to_json());
  CHECK(back.weights == m.weights);
  CHECK(back.bias == m.bias);
}

TEST_CASE("SVM decision rule") {
  SVMModel m;
  m.classes = sentiment_class_names();
  m.weights.assign(3, std::vector<double>(2, 0.0));
  m.bias = {1, 0, 0};
  CHECK(svm_predict(m, std::vector<double>{3, 4}) == 0);

  m.weights = {{1, -1}, {-1, 1}, {0.5, 0.5}};
  m.bias = {0, 0, 0};
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> x = {u(rng), u(rng)};
    const double c = 0.01 + u(rng) * 20;
    CHECK(svm_predict(m, x) == svm_predict(m, std::vector<double>{x[0] * c, x[1] * c}));
  }
  CHECK_THROWS_AS(svm_predict(m, std::vector<double>{1}), DimensionMismatch);
  CHECK_THROWS_AS(svm_train(Matrix{{1, INFINITY}}, std::vector<int>{0}, kAB, SVMParams{}), NonFiniteFeature);
  CHECK_THROWS_AS(svm_train(Matrix{}, std::vector<int>{}, kAB, SVMParams{}), EmptyTrainingSet);
}

TEST_CASE("stratified folds") {
  std::vector<int> labels;
  for (int i = 0; i < 47; ++i) labels.push_back(i % 7 < 4 ? 0 : (i % 7 < 6 ? 1 : 2));
  for (int k : {2, 3, 5, 10}) {
    const auto folds = stratified_folds(labels, k, 42);
    REQUIRE(folds.size() == labels.size());
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    std::vector<std::vector<std::size_t>> per(3, std::vector<std::size_t>(static_cast<std::size_t>(k), 0));
    for (std::size_t i = 0; i < folds.size(); ++i) {
      REQUIRE(folds[i] >= 0);
      REQUIRE(folds[i] < k);
      ++sizes[static_cast<std::size_t>(folds[i])];
      ++per[static_cast<std::size_t>(labels[i])][static_cast<std::size_t>(folds[i])];
    }
    CHECK(*std::max_element(sizes.begin(), sizes.end()) - *std::min_element(sizes.begin(), sizes.end()) <= 1);
    for (const auto& row : per) {
      CHECK(*std::max_element(row.begin(), row.end()) - *std::min_element(row.begin(), row.end()) <= 1);
    }
    CHECK(stratified_folds(labels, k, 42) == folds);
    for (int f = 0; f < k; ++f) {
      CHECK(fold_members(folds, f).size() + fold_complement(folds, f).size() == labels.size());
    }
  }
  CHECK(stratified_folds(labels, 5, 1) != stratified_folds(labels, 5, 2));
  CHECK_THROWS_AS(stratified_folds(labels, 1, 42), InvalidArgument);
  CHECK_THROWS_AS(stratified_folds(std::vector<int>{0, 1}, 3, 42), InvalidArgument);
}

TEST_CASE("grid search with a single point reports its CV score") {
  const auto& fx = synthetic_rows();
  const auto folds = stratified_folds(fx.y, 5, 7);
  const auto r = grid_search({ParamSet{{"alpha", "0.5"}}}, fx.X, fx.y, sentiment_class_names(), 5, 7,
                             nb_trainer(sentiment_class_names()));
  CHECK(r.best_params.at("alpha") == "0.5");
  REQUIRE(r.table.size() == 1);
  CHECK(std::abs(r.best_score - cv_macro_f1_oracle(fx, folds, 5, 0.5)) < 1e-12);
}

TEST_CASE("grid search over alpha picks the better of two hand-run CVs") {
  const auto& fx = synthetic_rows();
  const auto folds = stratified_folds(fx.y, 5, 42);
  const double low = cv_macro_f1_oracle(fx, folds, 5, 0.1);
  const double high = cv_macro_f1_oracle(fx, folds, 5, 1.0);
  INFO("alpha 0.1: " << low << "  alpha 1.0: " << high);
  const auto r = grid_search(expand_grid({{"alpha", {"0.1", "1.0"}}}), fx.X, fx.y,
                             sentiment_class_names(), 5, 42, nb_trainer(sentiment_class_names()));
  CHECK(r.best_params.at("alpha") == (high > low ? "1.0" : "0.1"));
  CHECK(std::abs(r.table[0].second - low) < 1e-12);
  CHECK(std::abs(r.table[1].second - high) < 1e-12);
}

TEST_CASE("grid search is deterministic and its best dominates the table") {
  const auto& fx = synthetic_rows();
  const auto space = expand_grid(default_nb_grid());
  CHECK(space.size() == 6);
  const auto a = grid_search(space, fx.X, fx.y, sentiment_class_names(), 5, 42, nb_trainer(sentiment_class_names()));
  const auto b = grid_search(space, fx.X, fx.y, sentiment_class_names(), 5, 42, nb_trainer(sentiment_class_names()));
  CHECK(a.to_json().dump() == b.to_json().dump());
  bool found = false;
  for (const auto& [params, score] : a.table) {
    CHECK(a.best_score >= score);
    found = found || params == a.best_params;
  }
  CHECK(found);
  const auto* final_nb = dynamic_cast<const NBClassifier*>(a.final_model.get());
  REQUIRE(final_nb != nullptr);
  CHECK(final_nb->model().alpha == nb_params_from(a.best_params).alpha);
  CHECK(final_nb->model().prior_mode == nb_params_from(a.best_params).prior_mode);

  const auto svm_space = expand_grid(default_svm_grid());
  CHECK(svm_space.size() == 8);
  CHECK(svm_space.front().at("lambda") == "1e-4");
  CHECK(svm_space.back().at("epochs") == "50");
}

TEST_CASE("grid search errors") {
  const Matrix X = {{1}, {1}, {1}, {2}, {2}, {2}};
  const std::vector<int> y = {0, 0, 0, 1, 1, 1};
  const auto t = nb_trainer(kAB);
  CHECK_THROWS_AS(grid_search({}, X, y, kAB, 2, 1, t), InvalidArgument);
  CHECK_THROWS_AS(grid_search({ParamSet{}}, X, y, kAB, 1, 1, t), InvalidArgument);
  CHECK_THROWS_AS(grid_search({ParamSet{}}, X, y, kAB, 4, 1, t), FoldTooSmall);
  CHECK_NOTHROW(grid_search({ParamSet{}}, X, y, kAB, 3, 1, t));
  CHECK_THROWS_AS(expand_grid({{"alpha", {}}}), InvalidArgument);
  CHECK_THROWS_AS(nb_params_from({{"alpha", "abc"}}), InvalidArgument);
}

TEST_CASE("grid search prefers alpha 1.0 where heavier smoothing wins") {
  // Sparse noisy count data: rare features seen once in training mislead a
  // lightly smoothed model. The first generator seed on which the hand-run
  // CVs rank alpha 1.0 above 0.1 becomes the fixture.
  auto make = [](unsigned seed) {
    std::mt19937 rng(seed);
    Fixture fx;
    for (int i = 0; i < 45; ++i) {
      const int k = i % 3;
      std::vector<double> row(12, 0.0);
      row[static_cast<std::size_t>(k)] = static_cast<double>(rng() % 2);
      for (int j = 0; j < 2; ++j) row[3 + rng() % 9] += 1.0;
      fx.X.push_back(row);
      fx.y.push_back(k);
    }
    return fx;
  };
  bool found = false;
  for (unsigned seed = 1; seed <= 200 && !found; ++seed) {
    const auto fx = make(seed);
    const auto folds = stratified_folds(fx.y, 3, 42);
    const double low = cv_macro_f1_oracle(fx, folds, 3, 0.1);
    const double high = cv_macro_f1_oracle(fx, folds, 3, 1.0);
    if (!(high > low)) continue;
    found = true;
    INFO("seed " << seed);
    const auto r = grid_search(expand_grid({{"alpha", {"0.1", "1.0"}}}), fx.X, fx.y,
                               sentiment_class_names(), 3, 42, nb_trainer(sentiment_class_names()));
    CHECK(r.best_params.at("alpha") == "1.0");
    CHECK(std::abs(r.best_score - high) < 1e-12);
  }
  CHECK(found);
}
