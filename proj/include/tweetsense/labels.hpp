#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tweetsense {

enum class Label { positive, negative, neutral, unsure, irrelevant, unlabeled };

/// Case-insensitive. An empty string is `unlabeled`; anything unrecognised
/// yields nullopt.
std::optional<Label> parse_label(std::string_view s);
std::string_view to_string(Label label);

/// The three classes the classifiers predict, in tie-break order: on equal
/// scores the earlier class wins.
inline constexpr std::array<Label, 3> kSentimentClasses = {Label::negative, Label::neutral,
                                                           Label::positive};
inline constexpr int kNumSentimentClasses = 3;

bool is_sentiment_class(Label label);
/// Index into kSentimentClasses; -1 for labels outside the class set.
int class_index(Label label);
Label class_label(int index);
std::vector<std::string> sentiment_class_names();

/// Coarse part of speech. `any` only appears in polarity lexicon keys.
enum class Pos { noun, verb, adj, adv, other, any };

std::optional<Pos> parse_pos(std::string_view s);
std::string_view to_string(Pos pos);

}  // namespace tweetsense
