#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tweetsense/labels.hpp"

namespace tweetsense {

/// Most-frequent-tag lexicon plus suffix fallbacks.
struct TagLexicon {
  std::unordered_map<std::string, Pos> words;
  /// Kept sorted longest suffix first.
  std::vector<std::pair<std::string, Pos>> suffix_rules;

  /// Built-in suffix rules (-ly adv; -ous/-ful/-ive/... adj; -ing/-ed/-ize verb).
  static TagLexicon defaults();
  void add_suffix_rule(std::string suffix, Pos pos);
};

/// tags.tsv: word<TAB>pos. A word starting with '-' is a suffix rule and
/// replaces the built-in rule for that suffix.
TagLexicon load_tag_lexicon(const std::filesystem::path& path);

/// Lexicon hit, else longest matching suffix, else noun. Digit strings are
/// tagged `other`.
std::vector<std::pair<std::string, Pos>> pos_tag(std::span<const std::string> tokens,
                                                 const TagLexicon& tl);

/// Seam for swapping in a statistical tagger.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual std::vector<Pos> tag(std::span<const std::string> tokens) const = 0;
};

class LexiconTagger final : public Tagger {
 public:
  LexiconTagger() : lexicon_(TagLexicon::defaults()) {}
  explicit LexiconTagger(TagLexicon lexicon) : lexicon_(std::move(lexicon)) {}

  /// Loads `dir/tags.tsv` when present, otherwise suffix rules only.
  static LexiconTagger from_directory(const std::filesystem::path& dir);

  std::vector<Pos> tag(std::span<const std::string> tokens) const override;
  const TagLexicon& lexicon() const { return lexicon_; }

 private:
  TagLexicon lexicon_;
};

}  // namespace tweetsense
