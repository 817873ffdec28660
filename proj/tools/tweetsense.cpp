// tweetsense command-line driver.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tweetsense/ablation.hpp"
#include "tweetsense/corpus.hpp"
#include "tweetsense/enhance.hpp"
#include "tweetsense/error.hpp"
#include "tweetsense/lexicons.hpp"
#include "tweetsense/normalize.hpp"
#include "tweetsense/pipeline.hpp"
#include "tweetsense/tagging.hpp"
#include "tweetsense/text.hpp"
#include "tweetsense/url_context.hpp"

#ifndef TWEETSENSE_DEFAULT_LEXICONS
#define TWEETSENSE_DEFAULT_LEXICONS "data/lexicons"
#endif

namespace fs = std::filesystem;
using namespace tweetsense;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct Globals {
  std::string lexicons = TWEETSENSE_DEFAULT_LEXICONS;
  std::string url_cache;
  bool offline = false;
  int fetch_timeout_ms = 5000;
  std::uint64_t seed = 42;
};

struct TrainFlags {
  std::string features = "all";
  std::string model = "nb";
  bool tune = false;
  int cv_folds = 5;
  int stack_folds = 5;
  std::optional<double> alpha;
  std::string prior_mode;
  std::vector<double> prior_weights;
  std::optional<double> lambda;
  std::optional<double> eta0;
  std::optional<int> epochs;
  std::vector<std::string> grid;
};

void add_train_flags(CLI::App* cmd, TrainFlags& f, bool with_model_kind = true) {
  cmd->add_option("--features", f.features, "Feature families, e.g. f1,f2,f4 or all")
      ->capture_default_str();
  if (with_model_kind) {
    cmd->add_option("--model", f.model, "Classifier: nb or svm")
        ->check(CLI::IsMember({"nb", "svm"}))
        ->capture_default_str();
  }
  cmd->add_flag("--tune", f.tune, "Grid-search hyperparameters with cross-validation");
  cmd->add_option("--cv-folds", f.cv_folds, "Folds for grid search")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  cmd->add_option("--stack-folds", f.stack_folds, "Folds for the stacked tf-idf feature")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "NB additive smoothing");
  cmd->add_option("--prior-mode", f.prior_mode, "NB priors: empirical, uniform or custom")
      ->check(CLI::IsMember({"empirical", "uniform", "custom"}));
  cmd->add_option("--prior-weights", f.prior_weights,
                  "Custom prior weights for negative, neutral, positive")
      ->expected(3)
      ->delimiter(',');
  cmd->add_option("--lambda", f.lambda, "SVM regularisation");
  cmd->add_option("--eta0", f.eta0, "SVM initial learning rate");
  cmd->add_option("--epochs", f.epochs, "SVM epochs");
  cmd->add_option("--grid", f.grid, "Grid axis name=v1,v2 (repeatable; replaces the default grid)");
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

PipelineConfig make_config(const TrainFlags& f, const Globals& g) {
  PipelineConfig cfg;
  cfg.mask = FeatureMask::parse(f.features);
  cfg.model = parse_model_kind(f.model);
  cfg.seed = g.seed;
  cfg.tune = f.tune;
  cfg.cv_folds = f.cv_folds;
  cfg.stack_folds = f.stack_folds;
  if (f.alpha) cfg.params["alpha"] = fmt_double(*f.alpha);
  if (!f.prior_mode.empty()) cfg.params["prior_mode"] = f.prior_mode;
  if (!f.prior_weights.empty()) {
    const char* names[] = {"prior_negative", "prior_neutral", "prior_positive"};
    for (std::size_t i = 0; i < 3; ++i) cfg.params[names[i]] = fmt_double(f.prior_weights[i]);
  }
  if (f.lambda) cfg.params["lambda"] = fmt_double(*f.lambda);
  if (f.eta0) cfg.params["eta0"] = fmt_double(*f.eta0);
  if (f.epochs) cfg.params["epochs"] = std::to_string(*f.epochs);
  for (const auto& axis : f.grid) {
    const auto eq = axis.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InvalidArgument("grid axis must look like name=v1,v2: '" + axis + "'");
    }
    cfg.grid.emplace_back(axis.substr(0, eq), split(axis.substr(eq + 1), ','));
  }
  return cfg;
}

/// Lexicons, tagger and URL context shared by every subcommand.
struct Session {
  LexiconBundle lex;
  LexiconTagger tagger;
  std::unique_ptr<UrlContext> urls;

  explicit Session(const Globals& g)
      : lex(load_lexicon_bundle(g.lexicons)), tagger(LexiconTagger::from_directory(g.lexicons)) {
    std::shared_ptr<const Fetcher> fetcher;
    if (g.offline) {
      fetcher = std::make_shared<OfflineFetcher>();
    } else {
      fetcher = std::make_shared<HttpFetcher>(
          HttpFetcherOptions{std::chrono::milliseconds(g.fetch_timeout_ms)});
    }
    urls = std::make_unique<UrlContext>(fetcher, UrlContextOptions{g.url_cache, 4});
    for (const auto& w : lex.warnings) std::cerr << "warning: " << w << '\n';
  }

  TextPipeline pipeline() { return TextPipeline(lex, tagger, urls.get()); }

  ~Session() {
    if (urls && urls->warning_count() > 0) {
      for (const auto& w : urls->warnings()) std::cerr << "warning: " << w << '\n';
      std::cerr << "url warnings: " << urls->warning_count() << '\n';
    }
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(out_path, text);
  }
}

void write_json(const nlohmann::ordered_json& j, const std::string& path) {
  if (!path.empty()) write_file_atomic(path, j.dump(2) + "\n");
}

std::string posterior_field(const ModelOutput& o) {
  if (!o.posterior) return "-";
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  for (std::size_t k = 0; k < 3; ++k) os << (k ? "," : "") << (*o.posterior)[k];
  return os.str();
}

std::string model_summary(const SentimentModel& m, std::size_t n_train) {
  std::ostringstream os;
  os << "model: " << to_string(m.kind()) << "\nfeatures: " << m.mask().to_string()
     << "\ntraining tweets: " << n_train << "\nparams:";
  for (const auto& [k, v] : m.params()) os << ' ' << k << '=' << v;
  os << '\n';
  if (m.tuning()) {
    os << std::fixed << std::setprecision(4) << "cv macro-F1 tuned: " << m.tuning()->search.best_score
       << "\ncv macro-F1 default: " << m.tuning()->default_score << '\n';
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tweet sentiment classification toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; flags win");

  Globals g;
  if (const char* env = std::getenv("TWEETSENSE_LEXICONS"); env != nullptr && *env != '\0') {
    g.lexicons = env;
  }
  app.add_option("--lexicons", g.lexicons, "Lexicon directory (env TWEETSENSE_LEXICONS)")
      ->capture_default_str();
  app.add_option("--url-cache", g.url_cache, "Directory of cached landing pages")
      ->envname("TWEETSENSE_URL_CACHE");
  app.add_flag("--offline", g.offline, "Never touch the network; cache misses become warnings");
  app.add_option("--fetch-timeout-ms", g.fetch_timeout_ms, "Per-request timeout")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for fold splits and SGD shuffles")->capture_default_str();

  // train
  auto* train = app.add_subcommand("train", "Train a model and write it as JSON");
  std::string train_path, model_out;
  TrainFlags train_flags;
  train->add_option("--train", train_path, "Training corpus TSV")->required();
  train->add_option("--model-out", model_out, "Where to write the model")->required();
  add_train_flags(train, train_flags);

  // predict
  auto* predict = app.add_subcommand("predict", "Label a corpus with a trained model");
  std::string model_path, in_path, out_path;
  predict->add_option("--model", model_path, "Model JSON")->required();
  predict->add_option("--in", in_path, "Corpus TSV")->required();
  predict->add_option("--out", out_path, "Output TSV (default stdout)");

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Precision, recall and F1 on a test split");
  std::string eval_model, eval_train, eval_test, eval_out;
  bool eval_macro = false;
  TrainFlags eval_flags;
  evaluate_cmd->add_option("--model", eval_model,
                           "Trained model JSON, or nb / svm to train one from --train");
  evaluate_cmd->add_option("--train", eval_train, "Train a fresh model from this corpus");
  evaluate_cmd->add_option("--test", eval_test, "Test corpus TSV")->required();
  evaluate_cmd->add_flag("--macro", eval_macro, "Also print unweighted macro averages");
  evaluate_cmd->add_option("--out", eval_out, "Write the report JSON here");
  add_train_flags(evaluate_cmd, eval_flags, false);

  // ablate
  auto* ablate = app.add_subcommand("ablate", "Incremental feature ablation");
  std::string abl_train, abl_test, abl_out;
  std::vector<std::string> abl_masks;
  bool abl_macro = false;
  TrainFlags abl_flags;
  ablate->add_option("--train", abl_train, "Training corpus TSV")->required();
  ablate->add_option("--test", abl_test, "Test corpus TSV")->required();
  ablate->add_option("--mask", abl_masks, "Feature mask per row (repeatable; default: cumulative feature groups)");
  ablate->add_flag("--macro", abl_macro, "Also print unweighted macro averages");
  ablate->add_option("--out", abl_out, "Write the report JSON here");
  add_train_flags(ablate, abl_flags);

  // harvest
  auto* harvest = app.add_subcommand("harvest", "Harvest class-specific sentiment terms");
  std::string hv_in, hv_model, hv_class = "negative", hv_out;
  double t1 = 0.10, t2 = 0.60;
  bool use_gold = false;
  harvest->add_option("--in", hv_in, "Corpus TSV")->required();
  harvest->add_option("--model", hv_model, "Model used to split the corpus by predicted class");
  harvest->add_flag("--use-gold", use_gold, "Split by gold labels instead of predictions");
  harvest->add_option("--class", hv_class, "Source class")
      ->check(CLI::IsMember({"negative", "neutral", "positive"}))
      ->capture_default_str();
  harvest->add_option("--t1", t1, "Top slice of the source class")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  harvest->add_option("--t2", t2, "Top slice of the other classes")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  harvest->add_option("--out", hv_out, "Output TSV (default stdout)");

  // strength
  auto* strength = app.add_subcommand("strength", "Signed sentiment strength per tweet");
  std::string st_model, st_in, st_out;
  double R = kDefaultStrengthCalibration;
  bool st_json = false;
  strength->add_option("--model", st_model, "Model JSON")->required();
  strength->add_option("--in", st_in, "Corpus TSV")->required();
  strength->add_option("--R", R, "Calibration constant")->check(CLI::Range(1.0, 1e9))->capture_default_str();
  strength->add_flag("--json", st_json, "Emit JSON lines with the components");
  strength->add_option("--out", st_out, "Output (default stdout)");

  // normalize
  auto* normalize = app.add_subcommand("normalize", "Show normalized tokens as JSON lines");
  std::string norm_in;
  std::vector<std::string> norm_text;
  normalize->add_option("--in", norm_in, "Corpus TSV");
  normalize->add_option("text", norm_text, "Raw tweet text (one tweet per argument)");

  // segment
  auto* segment = app.add_subcommand("segment", "Split hashtags into words");
  std::vector<std::string> seg_tags;
  segment->add_option("tags", seg_tags, "Hashtags, with or without '#'")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  std::string stats_in, stats_out;
  bool stats_json = false;
  stats->add_option("--in", stats_in, "Corpus TSV")->required();
  stats->add_flag("--json", stats_json, "Print JSON instead of a table");
  stats->add_option("--out", stats_out, "Write the JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (*segment) {
      // Needs only the word list.
      const auto lex = load_lexicon_bundle(g.lexicons);
      for (const auto& tag : seg_tags) {
        std::string_view t = tag;
        if (!t.empty() && t.front() == '#') t.remove_prefix(1);
        std::cout << join(segment_hashtag(t, lex.wordlist), " ") << '\n';
      }
      return 0;
    }

    Session s(g);
    auto pipe = s.pipeline();

    if (*train) {
      const auto cfg = make_config(train_flags, g);
      const auto corpus = load_corpus(train_path, true);
      const auto prepared = pipe.prepare_all(corpus, cfg.mask.has(5));
      const auto model = SentimentModel::train(prepared, cfg, s.lex);
      model.save(model_out);
      std::cout << model_summary(model, sentiment_rows(prepared).size()) << "written: " << model_out
                << '\n';
    } else if (*predict) {
      const auto model = SentimentModel::load(model_path);
      const auto corpus = load_corpus(in_path, true);
      const auto prepared = pipe.prepare_all(corpus, model.mask().has(5));
      const auto outputs = model.predict(prepared, s.lex);
      std::ostringstream os;
      for (std::size_t i = 0; i < prepared.size(); ++i) {
        os << prepared[i].tweet.id << '\t' << to_string(outputs[i].label) << '\t'
           << posterior_field(outputs[i]) << '\n';
      }
      emit(os.str(), out_path);
    } else if (*evaluate_cmd) {
      if (eval_model == "nb" || eval_model == "svm") {
        eval_flags.model = eval_model;
        eval_model.clear();
      }
      if (eval_model.empty() == eval_train.empty()) {
        std::cerr << "evaluate: give either a model file or --train\n";
        return kExitUsage;
      }
      const auto test = load_corpus(eval_test, true);
      nlohmann::ordered_json report;
      if (!eval_model.empty()) {
        const auto model = SentimentModel::load(eval_model);
        const auto prepared = pipe.prepare_all(test, model.mask().has(5));
        const auto r = evaluate_outputs(prepared, model.predict(prepared, s.lex));
        std::cout << r.to_table(eval_macro);
        report = r.to_json();
      } else {
        auto cfg = make_config(eval_flags, g);
        const auto train_corpus = load_corpus(eval_train, true);
        const auto train_set = pipe.prepare_all(train_corpus, cfg.mask.has(5));
        const auto test_set = pipe.prepare_all(test, cfg.mask.has(5));
        const bool tune = cfg.tune;
        cfg.tune = false;
        const auto base = SentimentModel::train(train_set, cfg, s.lex);
        const auto r = evaluate_outputs(test_set, base.predict(test_set, s.lex));
        if (tune) std::cout << "default parameters\n";
        std::cout << r.to_table(eval_macro);
        report["default"] = r.to_json();
        if (tune) {
          cfg.tune = true;
          const auto tuned = SentimentModel::train(train_set, cfg, s.lex);
          const auto rt = evaluate_outputs(test_set, tuned.predict(test_set, s.lex));
          std::cout << "\ntuned parameters:";
          for (const auto& [k, v] : tuned.params()) std::cout << ' ' << k << '=' << v;
          std::cout << '\n' << rt.to_table(eval_macro);
          report["tuned"] = rt.to_json();
          report["tuning"] = tuned.to_json()["tuning"];
        } else {
          report = report["default"];
        }
      }
      write_json(report, eval_out);
    } else if (*ablate) {
      const auto cfg = make_config(abl_flags, g);
      std::vector<FeatureMask> masks;
      for (const auto& m : abl_masks) masks.push_back(FeatureMask::parse(m));
      if (masks.empty()) masks = cumulative_masks();
      bool need_urls = false;
      for (const auto& m : masks) need_urls = need_urls || m.has(5);
      const auto train_set = pipe.prepare_all(load_corpus(abl_train, true), need_urls);
      const auto test_set = pipe.prepare_all(load_corpus(abl_test, true), need_urls);
      const auto rows = ablation_table(train_set, test_set, masks, cfg, s.lex);
      std::cout << ablation_to_table(rows, abl_macro);
      write_json(ablation_to_json(rows), abl_out);
    } else if (*harvest) {
      if (use_gold == !hv_model.empty()) {
        std::cerr << "harvest: give exactly one of --model or --use-gold\n";
        return kExitUsage;
      }
      HarvestConfig hc{t1, t2};
      hc.validate();
      const auto corpus = load_corpus(hv_in, true);
      std::optional<SentimentModel> model;
      if (!use_gold) model = SentimentModel::load(hv_model);
      const auto prepared = pipe.prepare_all(corpus, model && model->mask().has(5));
      std::vector<Label> labels;
      if (model) {
        for (const auto& o : model->predict(prepared, s.lex)) labels.push_back(o.label);
      } else {
        for (const auto& p : prepared) labels.push_back(p.tweet.label);
      }
      const Label src = *parse_label(hv_class);
      std::vector<TermCollection> collections;
      for (Label cls : kSentimentClasses) {
        std::vector<NormalizedTweet> group;
        for (std::size_t i = 0; i < prepared.size(); ++i) {
          if (labels[i] == cls) group.push_back(prepared[i].normalized);
        }
        collections.push_back(rank_frequencies(group, cls));
      }
      const TermCollection* source = nullptr;
      std::vector<const TermCollection*> others;
      for (const auto& c : collections) {
        if (c.cls == src) {
          source = &c;
        } else {
          others.push_back(&c);
        }
      }
      std::ostringstream os;
      for (const auto& [term, freq] : harvest_terms(*source, *others[0], *others[1], hc)) {
        os << term << '\t' << freq << '\n';
      }
      emit(os.str(), hv_out);
    } else if (*strength) {
      const auto model = SentimentModel::load(st_model);
      const auto corpus = load_corpus(st_in, true);
      const auto prepared = pipe.prepare_all(corpus, model.mask().has(5));
      const auto outputs = model.predict(prepared, s.lex);
      std::ostringstream os;
      for (std::size_t i = 0; i < prepared.size(); ++i) {
        // Strength needs f2 and f7 whatever the model was trained on.
        FeatureMask m;
        m.set(2).set(7);
        const auto fv = extract_features(prepared[i].normalized, prepared[i].tweet, s.lex, {},
                                         model.encoder(), std::nullopt, m);
        const auto score = strength_score(fv, outputs[i].label, R);
        if (st_json) {
          auto j = score.to_json();
          j["id"] = prepared[i].tweet.id;
          os << j.dump() << '\n';
        } else {
          os << prepared[i].tweet.id << '\t' << score.value << '\n';
        }
      }
      emit(os.str(), st_out);
    } else if (*normalize) {
      if (norm_in.empty() == norm_text.empty()) {
        std::cerr << "normalize: give either --in or tweet text\n";
        return kExitUsage;
      }
      std::vector<Tweet> tweets;
      if (!norm_in.empty()) {
        tweets = load_corpus(norm_in, true).tweets;
      } else {
        for (std::size_t i = 0; i < norm_text.size(); ++i) {
          Tweet t;
          t.id = std::to_string(i + 1);
          t.text = norm_text[i];
          tweets.push_back(std::move(t));
        }
      }
      for (const auto& t : tweets) std::cout << to_json(normalize_tweet(t, s.lex, s.tagger)).dump() << '\n';
    } else if (*stats) {
      const auto report = corpus_stats(load_corpus(stats_in, true), s.lex, s.tagger);
      if (stats_json) {
        std::cout << report.to_json().dump(2) << '\n';
      } else {
        std::cout << report.to_table();
      }
      write_json(report.to_json(), stats_out);
    }
    return 0;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}
