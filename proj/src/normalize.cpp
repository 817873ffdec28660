#include "tweetsense/normalize.hpp"

#include <algorithm>
#include <array>

#include "tweetsense/lexicons.hpp"
#include "tweetsense/tagging.hpp"
#include "tweetsense/text.hpp"

namespace tweetsense {

namespace {

bool is_tag_char(char c) { return is_word_char(c) || c == '_'; }

bool is_rt_marker(std::string_view chunk) {
  const std::string lower = to_lower(chunk);
  return lower == "rt" || lower == "rt:";
}

// Appends every "#word" occurrence in `chunk` (the '#' must start the chunk
// or follow a non-word character).
void collect_hashtags(std::string_view chunk, std::vector<std::string>& out) {
  for (std::size_t i = 0; i + 1 < chunk.size(); ++i) {
    if (chunk[i] != '#') continue;
    if (i > 0 && is_tag_char(chunk[i - 1])) continue;
    std::size_t j = i + 1;
    while (j < chunk.size() && is_tag_char(chunk[j])) ++j;
    if (j > i + 1) out.emplace_back(chunk.substr(i + 1, j - i - 1));
    i = j - 1;
  }
}

// Peels leading and trailing punctuation runs, keeping "#tag" intact.
void split_chunk(std::string_view chunk, std::vector<std::string>& out) {
  std::size_t begin = 0;
  std::size_t end = chunk.size();

  std::vector<std::string> tail;
  while (begin < end && is_punct(chunk[begin])) {
    if (chunk[begin] == '#' && begin + 1 < end && is_tag_char(chunk[begin + 1])) break;
    std::size_t run = begin + 1;
    while (run < end && chunk[run] == chunk[begin]) ++run;
    out.emplace_back(chunk.substr(begin, run - begin));
    begin = run;
  }
  while (end > begin && is_punct(chunk[end - 1])) {
    std::size_t run = end - 1;
    while (run > begin && chunk[run - 1] == chunk[end - 1]) --run;
    tail.emplace_back(chunk.substr(run, end - run));
    end = run;
  }
  if (end > begin) out.emplace_back(chunk.substr(begin, end - begin));
  out.insert(out.end(), tail.rbegin(), tail.rend());
}

struct WorkToken {
  std::string surface;
  bool was_capitalized = false;
};

bool is_hashtag_token(std::string_view s) {
  return s.size() >= 2 && s[0] == '#' && is_tag_char(s[1]);
}

std::vector<WorkToken> normalize_work_tokens(const std::vector<WorkToken>& tokens,
                                             const LexiconBundle& lex) {
  std::vector<WorkToken> out;
  for (const auto& tok : tokens) {
    std::string lower = to_lower(tok.surface);
    if (is_punct_only(lower)) continue;
    if (is_hashtag_token(lower)) {
      out.push_back({std::move(lower), false});
      continue;
    }
    if (auto it = lex.normalization.find(lower); it != lex.normalization.end()) lower = it->second;

    std::vector<std::string> expanded;
    if (auto it = lex.slang.find(lower); it != lex.slang.end()) {
      expanded = split_whitespace(it->second);
    } else {
      expanded.push_back(std::move(lower));
    }
    for (auto& word : expanded) {
      if (is_punct_only(word)) continue;
      if (lex.stopwords.contains(word) && !is_negation_word(word)) continue;
      out.push_back({std::move(word), tok.was_capitalized});
    }
  }
  return out;
}

}  // namespace

StrippedText strip_artifacts(std::string_view text) {
  StrippedText result;
  auto& a = result.artifacts;
  std::vector<std::string> kept;

  const auto chunks = split_whitespace(text);
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    std::string chunk = chunks[i];
    if (is_rt_marker(chunk)) {
      if (i == 0) a.is_retweet = true;
      continue;
    }
    if (chunk.size() >= 2 && chunk[0] == '@' && is_tag_char(chunk[1])) {
      std::size_t j = 1;
      while (j < chunk.size() && is_tag_char(chunk[j])) ++j;
      a.mentions.push_back(chunk.substr(1, j - 1));
      chunk = chunk.substr(j);
      if (chunk.empty()) continue;
    }
    // URLs can sit inside a chunk, e.g. "(http://x.y/z)".
    std::string rest;
    std::size_t from = 0;
    while (auto span = find_url(chunk, from)) {
      rest += chunk.substr(from, span->begin - from);
      a.urls.push_back(chunk.substr(span->begin, span->end - span->begin));
      from = span->end;
    }
    rest += chunk.substr(from);
    if (rest.empty()) continue;
    collect_hashtags(rest, a.hashtags);
    kept.push_back(std::move(rest));
  }
  result.clean_text = join(kept, " ");
  return result;
}

EmoticonScan extract_emoticons(std::string_view text, const LexiconBundle& lex) {
  EmoticonScan scan;
  const std::size_t max_len = lex.max_emoticon_length();
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    bool matched = false;
    const bool left_ok = i == 0 || is_space(text[i - 1]);
    for (std::size_t len = std::min(max_len, text.size() - i); len > 0; --len) {
      const std::string glyph(text.substr(i, len));
      auto it = lex.emoticons.find(glyph);
      if (it == lex.emoticons.end()) continue;
      // Glyphs that start with punctuation may directly follow a word
      // ("great:)"); glyphs ending in a letter need a boundary after them.
      const bool left = left_ok || (is_punct(glyph.front()) && is_word_char(text[i - 1]));
      const std::size_t after = i + len;
      const bool right = after == text.size() || is_space(text[after]) || is_punct(glyph.back());
      if (!left || !right) continue;
      if (it->second == EmoticonPolarity::positive) {
        ++scan.pos_n;
      } else {
        ++scan.neg_n;
      }
      out += ' ';
      i += len;
      matched = true;
      break;
    }
    if (!matched) out += text[i++];
  }
  scan.text_without = join(split_whitespace(out), " ");
  return scan;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& chunk : split_whitespace(text)) split_chunk(chunk, out);
  return out;
}

bool is_negation_word(std::string_view word) {
  static const std::unordered_set<std::string_view> kNegations = {
      "no",     "not",    "never",  "none",    "nobody",  "nothing",  "neither",
      "nor",    "nowhere", "cannot", "cant",   "dont",    "wont",     "isnt",
      "arent",  "wasnt",  "werent", "doesnt",  "didnt",   "hasnt",    "havent",
      "hadnt",  "shouldnt", "wouldnt", "couldnt", "aint", "n't"};
  if (kNegations.contains(word)) return true;
  return word.size() > 3 && word.ends_with("n't");
}

bool is_capitalized_word(std::string_view surface) {
  std::size_t letters = 0;
  for (char c : surface) {
    if (!is_alpha(c)) continue;
    if (!is_upper(c)) return false;
    ++letters;
  }
  return letters >= 2;
}

std::vector<std::string> normalize_tokens(const std::vector<std::string>& tokens,
                                          const LexiconBundle& lex) {
  std::vector<WorkToken> work;
  work.reserve(tokens.size());
  for (const auto& t : tokens) work.push_back({t, false});
  std::vector<std::string> out;
  for (auto& w : normalize_work_tokens(work, lex)) out.push_back(std::move(w.surface));
  return out;
}

std::vector<std::string> segment_hashtag(std::string_view tag,
                                         const std::unordered_set<std::string>& wordlist) {
  const std::string s = to_lower(tag);
  const std::size_t n = s.size();
  if (n == 0) return {};

  auto valid = [&](std::size_t begin, std::size_t end) {
    const std::string piece = s.substr(begin, end - begin);
    return wordlist.contains(piece) || is_all_digits(piece);
  };

  // count[i] = fewest segments covering s[i..n); next[i] = end of the first
  // segment in the preferred split. Among minimal splits the one with the
  // longest first segment wins, which makes the whole length sequence
  // lexicographically largest.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> count(n + 1, kNone);
  std::vector<std::size_t> next(n + 1, kNone);
  count[n] = 0;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = n; j > i; --j) {
      if (count[j] == kNone || !valid(i, j)) continue;
      if (count[i] == kNone || count[j] + 1 < count[i]) {
        count[i] = count[j] + 1;
        next[i] = j;
      }
    }
  }
  if (count[0] == kNone) return {s};

  std::vector<std::string> segments;
  for (std::size_t i = 0; i < n; i = next[i]) segments.push_back(s.substr(i, next[i] - i));
  return segments;
}

std::vector<Token> mark_negations(std::vector<Token> tokens, const LexiconBundle& lex) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!is_negation_word(tokens[i].surface)) continue;
    const std::size_t last = std::min(tokens.size(), i + 1 + kNegationWindow);
    for (std::size_t j = i + 1; j < last; ++j) {
      if (is_negation_word(tokens[j].surface)) continue;
      auto entry = lookup_polarity(lex, tokens[j].surface, tokens[j].pos.value_or(Pos::other));
      if (entry && entry->polarity != Polarity::neutral) {
        tokens[j].negated = true;
        break;
      }
    }
  }
  std::erase_if(tokens, [](const Token& t) { return is_negation_word(t.surface); });
  return tokens;
}

NormalizedTweet normalize_tweet(const Tweet& tweet, const LexiconBundle& lex,
                                const Tagger& tagger) {
  NormalizedTweet nt;
  nt.tweet_id = tweet.id;

  auto stripped = strip_artifacts(tweet.text);
  nt.artifacts = std::move(stripped.artifacts);
  const auto emo = extract_emoticons(stripped.clean_text, lex);
  nt.artifacts.pos_emoticons = emo.pos_n;
  nt.artifacts.neg_emoticons = emo.neg_n;

  std::vector<WorkToken> work;
  for (auto& raw : tokenize(emo.text_without)) {
    const bool caps = !is_hashtag_token(raw) && is_capitalized_word(raw);
    if (caps) ++nt.artifacts.capitalized;
    work.push_back({std::move(raw), caps});
  }
  work = normalize_work_tokens(work, lex);

  std::vector<WorkToken> segmented;
  for (auto& w : work) {
    if (!is_hashtag_token(w.surface)) {
      std::erase_if(w.surface, [](char c) { return c == '#' || c == '@'; });
      if (!w.surface.empty() && !is_punct_only(w.surface)) segmented.push_back(std::move(w));
      continue;
    }
    std::size_t end = 1;
    while (end < w.surface.size() && is_tag_char(w.surface[end])) ++end;
    for (const auto& part : split(w.surface.substr(1, end - 1), '_')) {
      for (auto& seg : segment_hashtag(part, lex.wordlist)) segmented.push_back({std::move(seg), false});
    }
  }

  std::vector<std::string> surfaces;
  surfaces.reserve(segmented.size());
  for (const auto& w : segmented) surfaces.push_back(w.surface);
  const auto tags = tagger.tag(surfaces);

  std::vector<Token> tokens;
  tokens.reserve(segmented.size());
  for (std::size_t i = 0; i < segmented.size(); ++i) {
    tokens.push_back(Token{segmented[i].surface, segmented[i].was_capitalized, false, tags[i]});
  }
  nt.tokens = mark_negations(std::move(tokens), lex);
  return nt;
}

nlohmann::ordered_json to_json(const NormalizedTweet& nt) {
  nlohmann::ordered_json j;
  j["id"] = nt.tweet_id;
  auto tokens = nlohmann::ordered_json::array();
  for (const auto& t : nt.tokens) {
    nlohmann::ordered_json tj;
    tj["surface"] = t.surface;
    tj["pos"] = t.pos ? std::string(to_string(*t.pos)) : std::string("untagged");
    tj["negated"] = t.negated;
    tj["was_capitalized"] = t.was_capitalized;
    tokens.push_back(std::move(tj));
  }
  j["tokens"] = std::move(tokens);
  const auto& a = nt.artifacts;
  nlohmann::ordered_json aj;
  aj["is_retweet"] = a.is_retweet;
  aj["mentions"] = a.mentions;
  aj["urls"] = a.urls;
  aj["hashtags"] = a.hashtags;
  aj["pos_emoticons"] = a.pos_emoticons;
  aj["neg_emoticons"] = a.neg_emoticons;
  aj["capitalized"] = a.capitalized;
  j["artifacts"] = std::move(aj);
  return j;
}

}  // namespace tweetsense
