#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tweetsense/labels.hpp"

namespace tweetsense {

enum class Strength { weak, strong };
enum class Polarity { positive, negative, neutral };

std::string_view to_string(Strength s);
std::string_view to_string(Polarity p);

struct PolarityEntry {
  std::string word;
  Pos pos = Pos::any;
  Strength strength = Strength::weak;
  Polarity polarity = Polarity::neutral;

  bool operator==(const PolarityEntry&) const = default;
};

enum class EmoticonPolarity { positive, negative };

/// The six dictionaries used by normalization and the polarity features.
/// All keys are lowercase except emoticon glyphs, which are kept verbatim.
class LexiconBundle {
 public:
  std::map<std::pair<std::string, Pos>, PolarityEntry> polarity;
  std::unordered_map<std::string, std::string> slang;
  std::unordered_map<std::string, std::string> normalization;
  std::map<std::string, EmoticonPolarity> emoticons;
  std::unordered_set<std::string> stopwords;
  std::unordered_set<std::string> wordlist;

  /// Non-fatal issues found while loading (duplicate keys and the like).
  std::vector<std::string> warnings;

  void add_polarity(PolarityEntry entry);
  std::size_t max_emoticon_length() const;
  std::string summary() const;
};

/// Loads polarity.tsv, slang.tsv, normalization.tsv, emoticons.tsv,
/// stopwords.txt and wordlist.txt from `dir`. Lines starting with '#' are
/// comments. Throws MissingLexicon / MalformedLexiconRow.
LexiconBundle load_lexicon_bundle(const std::filesystem::path& dir);

/// First hit of (word,pos), (word,any), (stem,pos), (stem,any). Stemming
/// is applied to the query only.
std::optional<PolarityEntry> lookup_polarity(const LexiconBundle& lex, const std::string& word,
                                             Pos pos);

}  // namespace tweetsense
