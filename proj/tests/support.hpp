#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tweetsense/lexicons.hpp"
#include "tweetsense/normalize.hpp"
#include "tweetsense/pipeline.hpp"
#include "tweetsense/url_context.hpp"
#include "tweetsense/tagging.hpp"

namespace testing {

inline std::filesystem::path data_dir() { return TWEETSENSE_DATA_DIR; }
inline std::filesystem::path fixtures_dir() { return data_dir() / "fixtures"; }
inline std::filesystem::path lexicon_dir() { return data_dir() / "lexicons"; }
inline std::string cli_path() { return TWEETSENSE_CLI; }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("tweetsense-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// The shipped lexicons, loaded once.
inline const tweetsense::LexiconBundle& shipped_lexicons() {
  static const auto lex = tweetsense::load_lexicon_bundle(lexicon_dir());
  return lex;
}

inline const tweetsense::LexiconTagger& shipped_tagger() {
  static const auto tagger = tweetsense::LexiconTagger::from_directory(lexicon_dir());
  return tagger;
}

/// Small hand-built bundle for cases that should not depend on shipped data.
inline tweetsense::LexiconBundle tiny_lexicons() {
  using namespace tweetsense;
  LexiconBundle lex;
  lex.add_polarity({"good", Pos::any, Strength::weak, Polarity::positive});
  lex.add_polarity({"nice", Pos::any, Strength::weak, Polarity::positive});
  lex.add_polarity({"excellent", Pos::any, Strength::strong, Polarity::positive});
  lex.add_polarity({"bad", Pos::any, Strength::strong, Polarity::negative});
  lex.add_polarity({"poor", Pos::any, Strength::weak, Polarity::negative});
  lex.add_polarity({"bill", Pos::any, Strength::weak, Polarity::neutral});
  lex.slang = {{"btw", "by the way"}, {"pls", "please"}};
  lex.normalization = {{"foudation", "foundation"}, {"forgt", "forgot"}};
  lex.emoticons = {{":-)", EmoticonPolarity::positive}, {":)", EmoticonPolarity::positive},
                   {":(", EmoticonPolarity::negative}, {":-(", EmoticonPolarity::negative}};
  lex.stopwords = {"the", "a", "by", "is", "this", "not", "no"};
  lex.wordlist = {"kill", "the", "bill", "pass", "it", "a", "i"};
  return lex;
}

/// A synthetic split prepared offline against the fixture article cache.
inline std::vector<tweetsense::PreparedTweet> prepared_synthetic(const std::string& split) {
  using namespace tweetsense;
  UrlContext ctx(std::make_shared<OfflineFetcher>(),
                 UrlContextOptions{fixtures_dir() / "synthetic" / "url_cache", 4});
  TextPipeline pipeline(shipped_lexicons(), shipped_tagger(), &ctx);
  return pipeline.prepare_all(load_corpus(fixtures_dir() / "synthetic" / (split + ".tsv"), true), true);
}

/// Runs a shell command, returning its exit status and captured stdout.
inline std::pair<int, std::string> run_command(const std::string& cmd) {
  std::string out;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, out};
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') {
      q += "'\\''";
    } else {
      q += c;
    }
  }
  return q + "'";
}

// ---------------------------------------------------------------------------
// Independent reference implementations.

/// Posterior of multinomial NB computed with plain products, no logs:
/// p(C_k) * prod_i p(x_i|C_k)^{x_i}, normalised over classes.
inline std::vector<double> nb_posterior_oracle(const std::vector<std::vector<double>>& X,
                                               const std::vector<int>& y, int num_classes,
                                               double alpha, bool uniform_prior,
                                               const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> joint(static_cast<std::size_t>(num_classes), 0.0);
  for (int k = 0; k < num_classes; ++k) {
    std::vector<double> feature_totals(n, 0.0);
    double class_total = 0.0;
    double class_rows = 0.0;
    for (std::size_t d = 0; d < X.size(); ++d) {
      if (y[d] != k) continue;
      class_rows += 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        feature_totals[i] += X[d][i];
        class_total += X[d][i];
      }
    }
    double p = uniform_prior ? 1.0 / num_classes : class_rows / static_cast<double>(X.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double likelihood =
          (feature_totals[i] + alpha) / (class_total + alpha * static_cast<double>(n));
      for (int rep = 0; rep < static_cast<int>(x[i]); ++rep) p *= likelihood;
    }
    joint[static_cast<std::size_t>(k)] = p;
  }
  double z = 0.0;
  for (double v : joint) z += v;
  for (double& v : joint) v /= z;
  return joint;
}

/// Term harvesting written as literal set algebra over materialised slices.
inline std::vector<std::pair<std::string, std::size_t>> harvest_oracle(
    const std::map<std::string, std::size_t>& src, const std::map<std::string, std::size_t>& o1,
    const std::map<std::string, std::size_t>& o2, double t1, double t2) {
  auto ranked = [](const std::map<std::string, std::size_t>& freq) {
    std::vector<std::pair<std::string, std::size_t>> v(freq.begin(), freq.end());
    // Bubble sort on purpose: a different algorithm from the library's.
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = 0; j + 1 < v.size() - i; ++j) {
        const bool swap = v[j].second < v[j + 1].second ||
                          (v[j].second == v[j + 1].second && v[j].first > v[j + 1].first);
        if (swap) std::swap(v[j], v[j + 1]);
      }
    }
    return v;
  };
  auto top = [](const std::vector<std::pair<std::string, std::size_t>>& v, double t) {
    std::size_t n = 0;
    while (static_cast<double>(n) < t * static_cast<double>(v.size()) - 1e-12) ++n;
    return std::vector<std::pair<std::string, std::size_t>>(v.begin(), v.begin() + static_cast<long>(n));
  };
  const auto src_top = top(ranked(src), t1);
  std::set<std::string> others;
  for (const auto& [w, _] : top(ranked(o1), t2)) others.insert(w);
  for (const auto& [w, _] : top(ranked(o2), t2)) others.insert(w);
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const auto& entry : src_top) {
    if (!others.count(entry.first)) out.push_back(entry);
  }
  return out;
}

struct OracleMetrics {
  std::vector<double> precision, recall, f1, support;
  double weighted_precision = 0, weighted_recall = 0, weighted_f1 = 0;
};

/// Metrics straight from a confusion matrix confusion[gold][pred].
inline OracleMetrics metrics_from_confusion(const std::vector<std::vector<std::size_t>>& cm) {
  OracleMetrics m;
  const std::size_t k = cm.size();
  double total = 0;
  for (std::size_t c = 0; c < k; ++c) {
    double tp = static_cast<double>(cm[c][c]);
    double row = 0, col = 0;
    for (std::size_t j = 0; j < k; ++j) {
      row += static_cast<double>(cm[c][j]);
      col += static_cast<double>(cm[j][c]);
    }
    const double p = col > 0 ? tp / col : 0.0;
    const double r = row > 0 ? tp / row : 0.0;
    m.precision.push_back(p);
    m.recall.push_back(r);
    m.f1.push_back(p + r > 0 ? 2 * p * r / (p + r) : 0.0);
    m.support.push_back(row);
    total += row;
  }
  for (std::size_t c = 0; c < k && total > 0; ++c) {
    m.weighted_precision += m.precision[c] * m.support[c] / total;
    m.weighted_recall += m.recall[c] * m.support[c] / total;
    m.weighted_f1 += m.f1[c] * m.support[c] / total;
  }
  return m;
}

}  // namespace testing
