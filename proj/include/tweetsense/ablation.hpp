#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tweetsense/features.hpp"
#include "tweetsense/metrics.hpp"
#include "tweetsense/pipeline.hpp"

namespace tweetsense {

/// f1,f2 -> +f4 -> +f6,f7 -> +f5 -> +f3,f9 -> +f8, each row cumulative.
std::vector<FeatureMask> cumulative_masks();

struct AblationRow {
  FeatureMask mask;
  EvalReport report;
};

/// Trains on `train` with each mask in turn and evaluates on the
/// sentiment-labelled tweets of `test`. The mask in `base` is ignored.
/// Throws InvalidArgument for an empty mask list or overlapping ids.
std::vector<AblationRow> ablation_table(std::span<const PreparedTweet> train,
                                        std::span<const PreparedTweet> test,
                                        const std::vector<FeatureMask>& masks,
                                        const PipelineConfig& base, const LexiconBundle& lex);

/// Evaluates predictions against the gold labels of the tweets that carry
/// a sentiment label.
EvalReport evaluate_outputs(std::span<const PreparedTweet> tweets,
                            std::span<const ModelOutput> outputs);

/// One line per mask: weighted precision, recall, F1 (and the macro triple
/// when asked).
std::string ablation_to_table(const std::vector<AblationRow>& rows, bool with_macro);
nlohmann::ordered_json ablation_to_json(const std::vector<AblationRow>& rows);

}  // namespace tweetsense
