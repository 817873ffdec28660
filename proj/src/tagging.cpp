#include "tweetsense/tagging.hpp"

#include <algorithm>

#include "tweetsense/error.hpp"
#include "tweetsense/text.hpp"

namespace tweetsense {

TagLexicon TagLexicon::defaults() {
  TagLexicon tl;
  for (const char* s : {"ly"}) tl.add_suffix_rule(s, Pos::adv);
  for (const char* s : {"ous", "ful", "ive", "able", "ible", "less", "ish", "ical", "ary"}) {
    tl.add_suffix_rule(s, Pos::adj);
  }
  for (const char* s : {"ing", "ed", "ize", "ise", "ify", "ate"}) tl.add_suffix_rule(s, Pos::verb);
  for (const char* s : {"ness", "ment", "tion", "sion", "ity", "ism", "ist", "ship"}) {
    tl.add_suffix_rule(s, Pos::noun);
  }
  return tl;
}

void TagLexicon::add_suffix_rule(std::string suffix, Pos pos) {
  auto it = std::find_if(suffix_rules.begin(), suffix_rules.end(),
                         [&suffix](const auto& r) { return r.first == suffix; });
  if (it != suffix_rules.end()) {
    it->second = pos;
    return;
  }
  suffix_rules.emplace_back(std::move(suffix), pos);
  std::stable_sort(suffix_rules.begin(), suffix_rules.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first < b.first;
  });
}

TagLexicon load_tag_lexicon(const std::filesystem::path& path) {
  TagLexicon tl = TagLexicon::defaults();
  const std::string name = path.filename().string();
  const auto lines = lines_of(read_file(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (trim(line).empty() || line.front() == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() != 2) throw MalformedLexiconRow(name, i + 1, "expected 2 columns");
    auto pos = parse_pos(cols[1]);
    if (!pos || *pos == Pos::any) throw MalformedLexiconRow(name, i + 1, "bad pos '" + cols[1] + "'");
    std::string word = to_lower(trim(cols[0]));
    if (word.empty() || word == "-") throw MalformedLexiconRow(name, i + 1, "empty word");
    if (word.front() == '-') {
      tl.add_suffix_rule(word.substr(1), *pos);
    } else {
      tl.words[std::move(word)] = *pos;
    }
  }
  return tl;
}

namespace {

Pos tag_one(const std::string& token, const TagLexicon& tl) {
  if (auto it = tl.words.find(token); it != tl.words.end()) return it->second;
  if (is_all_digits(token)) return Pos::other;
  for (const auto& [suffix, pos] : tl.suffix_rules) {
    if (token.size() > suffix.size() && token.ends_with(suffix)) return pos;
  }
  return Pos::noun;
}

}  // namespace

std::vector<std::pair<std::string, Pos>> pos_tag(std::span<const std::string> tokens,
                                                 const TagLexicon& tl) {
  std::vector<std::pair<std::string, Pos>> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.emplace_back(t, tag_one(t, tl));
  return out;
}

LexiconTagger LexiconTagger::from_directory(const std::filesystem::path& dir) {
  const auto path = dir / "tags.tsv";
  if (std::filesystem::exists(path)) return LexiconTagger(load_tag_lexicon(path));
  return LexiconTagger();
}

std::vector<Pos> LexiconTagger::tag(std::span<const std::string> tokens) const {
  std::vector<Pos> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(tag_one(t, lexicon_));
  return out;
}

}  // namespace tweetsense
