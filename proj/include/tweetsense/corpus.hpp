#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "tweetsense/labels.hpp"

namespace tweetsense {

class LexiconBundle;
class Tagger;

inline constexpr std::size_t kMaxTweetBytes = 560;

struct Tweet {
  std::string id;
  std::string user_id;
  std::string target;
  Label label = Label::unlabeled;
  std::string text;
};

/// Tweets in file order. Immutable once loaded.
struct Corpus {
  std::vector<Tweet> tweets;
  std::string split_name;

  std::size_t size() const { return tweets.size(); }
  bool empty() const { return tweets.empty(); }
};

/// Reads the 5-column TSV (id, user_id, target, label, text). Labels are
/// case-insensitive, an empty label column means unlabeled. Throws
/// MissingFile, MalformedRow or DuplicateId.
Corpus load_corpus(const std::filesystem::path& path, bool has_header);

/// Inverse of load_corpus; labels are written lowercase, unlabeled as "".
void save_corpus(const Corpus& corpus, const std::filesystem::path& path, bool with_header);
std::string serialize_corpus(const Corpus& corpus, bool with_header);

/// Keeps only positive, negative and neutral tweets, in order.
Corpus filter_labels(const Corpus& corpus);

struct StatsReport {
  std::size_t token_count = 0;
  std::size_t noun_count = 0;
  std::size_t adj_count = 0;
  std::size_t adv_count = 0;
  std::size_t verb_count = 0;
  std::size_t strong_pos = 0;
  std::size_t strong_neg = 0;
  std::size_t weak_pos = 0;
  std::size_t weak_neg = 0;
  std::size_t capitalized_words = 0;
  std::size_t mention_count = 0;
  std::size_t hashtag_count = 0;
  std::size_t rt_count = 0;
  std::size_t pos_emoticons = 0;
  std::size_t neg_emoticons = 0;
  std::map<Label, std::size_t> class_histogram;

  StatsReport& operator+=(const StatsReport& other);
  bool operator==(const StatsReport&) const = default;

  nlohmann::ordered_json to_json() const;
  std::string to_table() const;
};

/// Counters over normalized tokens; the histogram is over raw labels and
/// always lists all six labels.
StatsReport corpus_stats(const Corpus& corpus, const LexiconBundle& lex, const Tagger& tagger);

}  // namespace tweetsense
