#include "tweetsense/lexicons.hpp"

#include <algorithm>
#include <sstream>

#include "tweetsense/error.hpp"
#include "tweetsense/porter.hpp"
#include "tweetsense/text.hpp"

namespace tweetsense {

std::string_view to_string(Strength s) { return s == Strength::strong ? "strong" : "weak"; }

std::string_view to_string(Polarity p) {
  switch (p) {
    case Polarity::positive: return "positive";
    case Polarity::negative: return "negative";
    case Polarity::neutral: return "neutral";
  }
  return "neutral";
}

void LexiconBundle::add_polarity(PolarityEntry entry) {
  auto key = std::make_pair(entry.word, entry.pos);
  auto [it, inserted] = polarity.insert_or_assign(std::move(key), std::move(entry));
  if (!inserted) {
    warnings.push_back("polarity.tsv: duplicate entry (" + it->first.first + ", " +
                       std::string(to_string(it->first.second)) + "), last one wins");
  }
}

std::size_t LexiconBundle::max_emoticon_length() const {
  std::size_t n = 0;
  for (const auto& [glyph, _] : emoticons) n = std::max(n, glyph.size());
  return n;
}

std::string LexiconBundle::summary() const {
  std::ostringstream os;
  os << "polarity=" << polarity.size() << " slang=" << slang.size()
     << " normalization=" << normalization.size() << " emoticons=" << emoticons.size()
     << " stopwords=" << stopwords.size() << " wordlist=" << wordlist.size();
  return os.str();
}

namespace {

struct Row {
  std::size_t line_no;
  std::vector<std::string> cols;
};

std::vector<Row> read_rows(const std::filesystem::path& dir, const std::string& name) {
  const auto path = dir / name;
  if (!std::filesystem::exists(path)) throw MissingLexicon(name);
  const auto lines = lines_of(read_file(path));
  std::vector<Row> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (trim(line).empty() || line.front() == '#') continue;
    rows.push_back({i + 1, split(line, '\t')});
  }
  return rows;
}

void expect_columns(const std::string& name, const Row& row, std::size_t n) {
  if (row.cols.size() != n) {
    throw MalformedLexiconRow(name, row.line_no,
                              "expected " + std::to_string(n) + " columns, got " +
                                  std::to_string(row.cols.size()));
  }
}

std::unordered_map<std::string, std::string> load_mapping(const std::filesystem::path& dir,
                                                          const std::string& name) {
  std::unordered_map<std::string, std::string> out;
  for (const auto& row : read_rows(dir, name)) {
    expect_columns(name, row, 2);
    std::string key = to_lower(trim(row.cols[0]));
    std::string value = to_lower(trim(row.cols[1]));
    if (key.empty() || value.empty()) throw MalformedLexiconRow(name, row.line_no, "empty field");
    out[std::move(key)] = std::move(value);
  }
  return out;
}

std::unordered_set<std::string> load_word_set(const std::filesystem::path& dir,
                                              const std::string& name) {
  std::unordered_set<std::string> out;
  for (const auto& row : read_rows(dir, name)) {
    expect_columns(name, row, 1);
    std::string word = to_lower(trim(row.cols[0]));
    if (!word.empty()) out.insert(std::move(word));
  }
  return out;
}

}  // namespace

LexiconBundle load_lexicon_bundle(const std::filesystem::path& dir) {
  LexiconBundle lex;

  const std::string polarity_name = "polarity.tsv";
  for (const auto& row : read_rows(dir, polarity_name)) {
    expect_columns(polarity_name, row, 4);
    PolarityEntry e;
    e.word = to_lower(trim(row.cols[0]));
    if (e.word.empty()) throw MalformedLexiconRow(polarity_name, row.line_no, "empty word");
    auto pos = parse_pos(row.cols[1]);
    if (!pos || *pos == Pos::other) {
      throw MalformedLexiconRow(polarity_name, row.line_no, "bad pos '" + row.cols[1] + "'");
    }
    e.pos = *pos;
    const std::string strength = to_lower(trim(row.cols[2]));
    if (strength == "weak") {
      e.strength = Strength::weak;
    } else if (strength == "strong") {
      e.strength = Strength::strong;
    } else {
      throw MalformedLexiconRow(polarity_name, row.line_no, "bad strength '" + row.cols[2] + "'");
    }
    const std::string polarity = to_lower(trim(row.cols[3]));
    if (polarity == "positive") {
      e.polarity = Polarity::positive;
    } else if (polarity == "negative") {
      e.polarity = Polarity::negative;
    } else if (polarity == "neutral") {
      e.polarity = Polarity::neutral;
    } else {
      throw MalformedLexiconRow(polarity_name, row.line_no, "bad polarity '" + row.cols[3] + "'");
    }
    lex.add_polarity(std::move(e));
  }

  lex.slang = load_mapping(dir, "slang.tsv");
  lex.normalization = load_mapping(dir, "normalization.tsv");

  const std::string emoticon_name = "emoticons.tsv";
  for (const auto& row : read_rows(dir, emoticon_name)) {
    expect_columns(emoticon_name, row, 2);
    std::string glyph(trim(row.cols[0]));
    const std::string polarity = to_lower(trim(row.cols[1]));
    if (glyph.empty()) throw MalformedLexiconRow(emoticon_name, row.line_no, "empty glyph");
    if (polarity == "positive") {
      lex.emoticons[glyph] = EmoticonPolarity::positive;
    } else if (polarity == "negative") {
      lex.emoticons[glyph] = EmoticonPolarity::negative;
    } else {
      throw MalformedLexiconRow(emoticon_name, row.line_no, "bad polarity '" + row.cols[1] + "'");
    }
  }

  lex.stopwords = load_word_set(dir, "stopwords.txt");
  lex.wordlist = load_word_set(dir, "wordlist.txt");
  return lex;
}

std::optional<PolarityEntry> lookup_polarity(const LexiconBundle& lex, const std::string& word,
                                             Pos pos) {
  auto find = [&lex](const std::string& w, Pos p) -> std::optional<PolarityEntry> {
    auto it = lex.polarity.find({w, p});
    if (it == lex.polarity.end()) return std::nullopt;
    return it->second;
  };
  if (auto e = find(word, pos)) return e;
  if (auto e = find(word, Pos::any)) return e;
  const std::string stem = porter_stem(word);
  if (auto e = find(stem, pos)) return e;
  if (auto e = find(stem, Pos::any)) return e;
  return std::nullopt;
}

}  // namespace tweetsense
