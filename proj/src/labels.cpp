#include "tweetsense/labels.hpp"

#include "tweetsense/text.hpp"

namespace tweetsense {

std::optional<Label> parse_label(std::string_view s) {
  const std::string lower = to_lower(trim(s));
  if (lower.empty()) return Label::unlabeled;
  if (lower == "positive") return Label::positive;
  if (lower == "negative") return Label::negative;
  if (lower == "neutral") return Label::neutral;
  if (lower == "unsure") return Label::unsure;
  if (lower == "irrelevant") return Label::irrelevant;
  if (lower == "unlabeled") return Label::unlabeled;
  return std::nullopt;
}

std::string_view to_string(Label label) {
  switch (label) {
    case Label::positive: return "positive";
    case Label::negative: return "negative";
    case Label::neutral: return "neutral";
    case Label::unsure: return "unsure";
    case Label::irrelevant: return "irrelevant";
    case Label::unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

bool is_sentiment_class(Label label) { return class_index(label) >= 0; }

int class_index(Label label) {
  for (int k = 0; k < kNumSentimentClasses; ++k) {
    if (kSentimentClasses[static_cast<std::size_t>(k)] == label) return k;
  }
  return -1;
}

Label class_label(int index) { return kSentimentClasses.at(static_cast<std::size_t>(index)); }

std::vector<std::string> sentiment_class_names() {
  std::vector<std::string> names;
  for (Label l : kSentimentClasses) names.emplace_back(to_string(l));
  return names;
}

std::optional<Pos> parse_pos(std::string_view s) {
  const std::string lower = to_lower(trim(s));
  if (lower == "noun") return Pos::noun;
  if (lower == "verb") return Pos::verb;
  if (lower == "adj") return Pos::adj;
  if (lower == "adv") return Pos::adv;
  if (lower == "other") return Pos::other;
  if (lower == "any" || lower == "anypos") return Pos::any;
  return std::nullopt;
}

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::noun: return "noun";
    case Pos::verb: return "verb";
    case Pos::adj: return "adj";
    case Pos::adv: return "adv";
    case Pos::other: return "other";
    case Pos::any: return "any";
  }
  return "other";
}

}  // namespace tweetsense
