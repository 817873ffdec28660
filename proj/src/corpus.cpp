#include "tweetsense/corpus.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "tweetsense/error.hpp"
#include "tweetsense/features.hpp"
#include "tweetsense/normalize.hpp"
#include "tweetsense/text.hpp"

namespace tweetsense {

namespace {

constexpr std::array<Label, 6> kAllLabels = {Label::positive, Label::negative,   Label::neutral,
                                             Label::unsure,   Label::irrelevant, Label::unlabeled};

constexpr const char* kHeader = "id\tuser_id\ttarget\tlabel\ttext";

}  // namespace

Corpus load_corpus(const std::filesystem::path& path, bool has_header) {
  const std::string content = read_file(path);
  const std::string file = path.string();
  Corpus corpus;
  corpus.split_name = path.stem().string();
  std::unordered_set<std::string> seen;

  const auto lines = lines_of(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (has_header && i == 0) continue;
    const std::string& line = lines[i];
    if (trim(line).empty()) continue;

    auto cols = split(line, '\t');
    if (cols.size() != 5) {
      throw MalformedRow(file, line_no,
                         "expected 5 tab-separated columns, got " + std::to_string(cols.size()));
    }
    Tweet t;
    t.id = std::string(trim(cols[0]));
    t.user_id = std::string(trim(cols[1]));
    t.target = std::string(trim(cols[2]));
    auto label = parse_label(cols[3]);
    if (!label) throw MalformedRow(file, line_no, "unknown label '" + cols[3] + "'");
    t.label = *label;
    t.text = cols[4];

    if (t.id.empty()) throw MalformedRow(file, line_no, "empty id");
    if (trim(t.text).empty()) throw MalformedRow(file, line_no, "empty text");
    if (t.text.size() > kMaxTweetBytes) {
      throw MalformedRow(file, line_no, "text longer than " + std::to_string(kMaxTweetBytes) +
                                            " bytes");
    }
    if (!seen.insert(t.id).second) throw DuplicateId(t.id);
    corpus.tweets.push_back(std::move(t));
  }
  return corpus;
}

std::string serialize_corpus(const Corpus& corpus, bool with_header) {
  std::string out;
  if (with_header) {
    out += kHeader;
    out += '\n';
  }
  for (const auto& t : corpus.tweets) {
    out += t.id;
    out += '\t';
    out += t.user_id;
    out += '\t';
    out += t.target;
    out += '\t';
    if (t.label != Label::unlabeled) out += to_string(t.label);
    out += '\t';
    out += t.text;
    out += '\n';
  }
  return out;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path, bool with_header) {
  write_file_atomic(path, serialize_corpus(corpus, with_header));
}

Corpus filter_labels(const Corpus& corpus) {
  Corpus out;
  out.split_name = corpus.split_name;
  for (const auto& t : corpus.tweets) {
    if (is_sentiment_class(t.label)) out.tweets.push_back(t);
  }
  return out;
}

StatsReport& StatsReport::operator+=(const StatsReport& o) {
  token_count += o.token_count;
  noun_count += o.noun_count;
  adj_count += o.adj_count;
  adv_count += o.adv_count;
  verb_count += o.verb_count;
  strong_pos += o.strong_pos;
  strong_neg += o.strong_neg;
  weak_pos += o.weak_pos;
  weak_neg += o.weak_neg;
  capitalized_words += o.capitalized_words;
  mention_count += o.mention_count;
  hashtag_count += o.hashtag_count;
  rt_count += o.rt_count;
  pos_emoticons += o.pos_emoticons;
  neg_emoticons += o.neg_emoticons;
  for (const auto& [label, n] : o.class_histogram) class_histogram[label] += n;
  return *this;
}

nlohmann::ordered_json StatsReport::to_json() const {
  nlohmann::ordered_json j;
  j["token_count"] = token_count;
  j["noun_count"] = noun_count;
  j["adj_count"] = adj_count;
  j["adv_count"] = adv_count;
  j["verb_count"] = verb_count;
  j["strong_pos"] = strong_pos;
  j["strong_neg"] = strong_neg;
  j["weak_pos"] = weak_pos;
  j["weak_neg"] = weak_neg;
  j["capitalized_words"] = capitalized_words;
  j["mention_count"] = mention_count;
  j["hashtag_count"] = hashtag_count;
  j["rt_count"] = rt_count;
  j["pos_emoticons"] = pos_emoticons;
  j["neg_emoticons"] = neg_emoticons;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (Label l : kAllLabels) {
    auto it = class_histogram.find(l);
    hist[std::string(to_string(l))] = it == class_histogram.end() ? 0 : it->second;
  }
  j["class_histogram"] = hist;
  return j;
}

std::string StatsReport::to_table() const {
  std::ostringstream os;
  auto row = [&os](std::string_view name, std::size_t value) {
    os << std::left << std::setw(20) << name << std::right << std::setw(10) << value << '\n';
  };
  os << std::left << std::setw(20) << "type of tokens" << std::right << std::setw(10) << "count"
     << '\n';
  row("all tokens", token_count);
  row("noun", noun_count);
  row("adj", adj_count);
  row("adv", adv_count);
  row("verb", verb_count);
  row("strong positive", strong_pos);
  row("strong negative", strong_neg);
  row("weak positive", weak_pos);
  row("weak negative", weak_neg);
  row("capitalized words", capitalized_words);
  row("mention(@)", mention_count);
  row("hashtag(#)", hashtag_count);
  row("RT", rt_count);
  row("positive emoticons", pos_emoticons);
  row("negative emoticons", neg_emoticons);
  for (Label l : kAllLabels) {
    auto it = class_histogram.find(l);
    row("label " + std::string(to_string(l)), it == class_histogram.end() ? 0 : it->second);
  }
  return os.str();
}

StatsReport corpus_stats(const Corpus& corpus, const LexiconBundle& lex, const Tagger& tagger) {
  StatsReport r;
  for (Label l : kAllLabels) r.class_histogram[l] = 0;
  for (const auto& t : corpus.tweets) {
    ++r.class_histogram[t.label];
    const NormalizedTweet nt = normalize_tweet(t, lex, tagger);
    r.token_count += nt.tokens.size();
    for (const auto& tok : nt.tokens) {
      if (!tok.pos) continue;
      switch (*tok.pos) {
        case Pos::noun: ++r.noun_count; break;
        case Pos::adj: ++r.adj_count; break;
        case Pos::adv: ++r.adv_count; break;
        case Pos::verb: ++r.verb_count; break;
        default: break;
      }
    }
    const PolarityCounts pc = polarity_counts(nt.tokens, lex);
    r.strong_pos += pc.strong_pos;
    r.strong_neg += pc.strong_neg;
    r.weak_pos += pc.weak_pos;
    r.weak_neg += pc.weak_neg;
    r.capitalized_words += nt.artifacts.capitalized;
    r.mention_count += nt.artifacts.mentions.size();
    r.hashtag_count += nt.artifacts.hashtags.size();
    r.rt_count += nt.artifacts.is_retweet ? 1 : 0;
    r.pos_emoticons += nt.artifacts.pos_emoticons;
    r.neg_emoticons += nt.artifacts.neg_emoticons;
  }
  return r;
}

}  // namespace tweetsense
