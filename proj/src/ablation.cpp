#include "tweetsense/ablation.hpp"

#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "tweetsense/error.hpp"

namespace tweetsense {

std::vector<FeatureMask> cumulative_masks() {
  const std::vector<std::vector<int>> steps = {{1, 2}, {4}, {6, 7}, {5}, {3, 9}, {8}};
  std::vector<FeatureMask> masks;
  FeatureMask m;
  for (const auto& step : steps) {
    for (int f : step) m.set(f);
    masks.push_back(m);
  }
  return masks;
}

EvalReport evaluate_outputs(std::span<const PreparedTweet> tweets,
                            std::span<const ModelOutput> outputs) {
  if (tweets.size() != outputs.size()) throw LengthMismatch(tweets.size(), outputs.size());
  std::vector<Label> preds;
  std::vector<Label> gold;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    if (!is_sentiment_class(tweets[i].tweet.label)) continue;
    preds.push_back(outputs[i].label);
    gold.push_back(tweets[i].tweet.label);
  }
  return evaluate(preds, gold);
}

std::vector<AblationRow> ablation_table(std::span<const PreparedTweet> train,
                                        std::span<const PreparedTweet> test,
                                        const std::vector<FeatureMask>& masks,
                                        const PipelineConfig& base, const LexiconBundle& lex) {
  if (masks.empty()) throw InvalidArgument("ablation needs at least one feature mask");
  std::unordered_set<std::string> train_ids;
  for (const auto& t : train) train_ids.insert(t.tweet.id);
  for (const auto& t : test) {
    if (train_ids.contains(t.tweet.id)) {
      throw InvalidArgument("tweet id " + t.tweet.id + " is in both train and test");
    }
  }
  std::vector<AblationRow> rows;
  for (const auto& mask : masks) {
    PipelineConfig cfg = base;
    cfg.mask = mask;
    const auto model = SentimentModel::train(train, cfg, lex);
    const auto outputs = model.predict(test, lex);
    rows.push_back({mask, evaluate_outputs(test, outputs)});
  }
  return rows;
}

namespace {

std::string row_label(const FeatureMask& mask) { return "+" + mask.to_string(); }

}  // namespace

std::string ablation_to_table(const std::vector<AblationRow>& rows, bool with_macro) {
  std::size_t width = 8;
  for (const auto& r : rows) width = std::max(width, row_label(r.mask).size() + 2);
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << std::left << std::setw(static_cast<int>(width)) << "features" << std::right
     << std::setw(8) << "Prec" << std::setw(8) << "Recall" << std::setw(8) << "F1";
  if (with_macro) os << std::setw(10) << "macroP" << std::setw(8) << "macroR" << std::setw(8) << "macroF1";
  os << '\n';
  for (const auto& r : rows) {
    const auto& w = r.report.weighted;
    os << std::left << std::setw(static_cast<int>(width)) << row_label(r.mask) << std::right
       << std::setw(8) << w.precision << std::setw(8) << w.recall << std::setw(8) << w.f1;
    if (with_macro) {
      const auto& m = r.report.macro;
      os << std::setw(10) << m.precision << std::setw(8) << m.recall << std::setw(8) << m.f1;
    }
    os << '\n';
  }
  return os.str();
}

nlohmann::ordered_json ablation_to_json(const std::vector<AblationRow>& rows) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({{"features", r.mask.to_string()}, {"report", r.report.to_json()}});
  }
  return out;
}

}  // namespace tweetsense
