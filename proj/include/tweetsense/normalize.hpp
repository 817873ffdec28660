#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "tweetsense/corpus.hpp"
#include "tweetsense/labels.hpp"

namespace tweetsense {

class LexiconBundle;
class Tagger;

struct TweetArtifacts {
  bool is_retweet = false;
  std::vector<std::string> mentions;
  std::vector<std::string> urls;
  /// Without the leading '#', original case.
  std::vector<std::string> hashtags;
  std::size_t pos_emoticons = 0;
  std::size_t neg_emoticons = 0;
  /// All-caps words (two or more letters) seen before lowercasing.
  std::size_t capitalized = 0;

  bool operator==(const TweetArtifacts&) const = default;
};

struct Token {
  std::string surface;
  bool was_capitalized = false;
  bool negated = false;
  std::optional<Pos> pos;

  bool operator==(const Token&) const = default;
};

struct NormalizedTweet {
  std::string tweet_id;
  std::vector<Token> tokens;
  TweetArtifacts artifacts;

  bool operator==(const NormalizedTweet&) const = default;
};

struct StrippedText {
  std::string clean_text;
  TweetArtifacts artifacts;
};

/// Removes the retweet marker, @mentions and URLs, recording them. Hashtags
/// are recorded but stay in the text. A leading "RT" sets is_retweet; a
/// standalone "RT" elsewhere ("PLS RT") is removed without setting it.
StrippedText strip_artifacts(std::string_view text);

struct EmoticonScan {
  std::string text_without;
  std::size_t pos_n = 0;
  std::size_t neg_n = 0;
};

/// Longest-match scan against the emoticon dictionary; matches are removed
/// and tallied.
EmoticonScan extract_emoticons(std::string_view text, const LexiconBundle& lex);

/// Whitespace split, then leading/trailing punctuation peeled off into its
/// own tokens. Internal apostrophes ("won't") and a leading '#' on a
/// hashtag are kept.
std::vector<std::string> tokenize(std::string_view text);

bool is_negation_word(std::string_view word);
/// All-caps word with at least two letters.
bool is_capitalized_word(std::string_view surface);

/// lowercase -> normalization dictionary -> slang expansion -> stopword
/// removal (negation words exempt). Punctuation-only tokens are dropped and
/// '#'-prefixed hashtag tokens pass through lowercased for later
/// segmentation.
std::vector<std::string> normalize_tokens(const std::vector<std::string>& tokens,
                                          const LexiconBundle& lex);

/// Splits a hashtag body into wordlist words (digit runs also count):
/// fewest segments, ties going to the longer first segment. Returns the
/// lowercased tag as a single segment when no full split exists.
std::vector<std::string> segment_hashtag(std::string_view tag,
                                         const std::unordered_set<std::string>& wordlist);

inline constexpr std::size_t kNegationWindow = 3;

/// Flags the first polarity-bearing token within kNegationWindow tokens
/// after each negation word, then drops the negation words.
std::vector<Token> mark_negations(std::vector<Token> tokens, const LexiconBundle& lex);

NormalizedTweet normalize_tweet(const Tweet& tweet, const LexiconBundle& lex,
                                const Tagger& tagger);

nlohmann::ordered_json to_json(const NormalizedTweet& nt);

}  // namespace tweetsense
