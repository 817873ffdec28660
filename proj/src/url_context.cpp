#include "tweetsense/url_context.hpp"

#include <atomic>
#include <set>
#include <unordered_set>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>
#include <openssl/evp.h>

#include "tweetsense/error.hpp"
#include "tweetsense/normalize.hpp"
#include "tweetsense/tagging.hpp"
#include "tweetsense/text.hpp"

namespace tweetsense {

std::vector<std::string> extract_urls(std::string_view text) {
  std::vector<std::string> urls;
  std::size_t from = 0;
  while (auto span = find_url(text, from)) {
    urls.emplace_back(text.substr(span->begin, span->end - span->begin));
    from = span->end;
  }
  return urls;
}

std::string OfflineFetcher::get(const std::string& url) const {
  throw FetchFailed(url, "offline mode, not in cache");
}

std::string cache_key(std::string_view url) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(url.data(), url.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

namespace {

bool is_block_tag(std::string_view name) {
  static const std::unordered_set<std::string_view> kBlock = {
      "p",       "div",    "br",     "h1",     "h2",      "h3",     "h4",  "h5",
      "h6",      "li",     "ul",     "ol",     "table",   "tr",     "td",  "th",
      "section", "article", "header", "footer", "blockquote", "pre", "hr", "title",
      "main",    "nav",    "aside",  "figure", "figcaption", "dl",  "dt",  "dd"};
  return kBlock.contains(name);
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x110000) {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Decodes the entity starting at s[i] == '&'. Returns the number of bytes
// consumed, 0 if it is not a recognised entity.
std::size_t decode_entity(std::string_view s, std::size_t i, std::string& out) {
  const std::size_t semi = s.find(';', i);
  if (semi == std::string_view::npos || semi - i > 10) return 0;
  const std::string name(s.substr(i + 1, semi - i - 1));
  static const std::map<std::string, std::string> kNamed = {
      {"amp", "&"}, {"lt", "<"},   {"gt", ">"},    {"quot", "\""},
      {"apos", "'"}, {"nbsp", " "}, {"#39", "'"}, {"mdash", "-"}, {"ndash", "-"}};
  if (auto it = kNamed.find(name); it != kNamed.end()) {
    out += it->second;
    return semi - i + 1;
  }
  if (name.size() >= 2 && name[0] == '#') {
    const bool hex = name[1] == 'x' || name[1] == 'X';
    const std::string digits = name.substr(hex ? 2 : 1);
    if (digits.empty()) return 0;
    try {
      std::size_t used = 0;
      const unsigned long cp = std::stoul(digits, &used, hex ? 16 : 10);
      if (used != digits.size()) return 0;
      append_utf8(out, cp);
      return semi - i + 1;
    } catch (const std::exception&) {
      return 0;
    }
  }
  return 0;
}

std::string now_iso8601() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

std::string strip_markup(std::string_view html) {
  const std::string lower = to_lower(html);
  std::string out;
  std::size_t i = 0;
  auto skip_past = [&](std::string_view marker) {
    const std::size_t end = lower.find(marker, i);
    i = end == std::string::npos ? html.size() : end + marker.size();
  };
  while (i < html.size()) {
    const char c = html[i];
    if (c == '<') {
      if (lower.compare(i, 4, "<!--") == 0) {
        skip_past("-->");
        continue;
      }
      std::size_t j = i + 1;
      const bool closing = j < html.size() && html[j] == '/';
      if (closing) ++j;
      std::size_t name_end = j;
      while (name_end < html.size() && (is_alpha(html[name_end]) || is_digit(html[name_end]))) {
        ++name_end;
      }
      const std::string name = lower.substr(j, name_end - j);
      if (!closing && (name == "script" || name == "style" || name == "head")) {
        skip_past("</" + name);
        skip_past(">");
        continue;
      }
      const std::size_t close = html.find('>', i);
      if (name.empty() && !closing && close == std::string_view::npos) {
        out += c;
        ++i;
        continue;
      }
      if (is_block_tag(name)) out += "\n\n";
      i = close == std::string_view::npos ? html.size() : close + 1;
      continue;
    }
    if (c == '&') {
      if (const std::size_t used = decode_entity(html, i, out)) {
        i += used;
        continue;
      }
    }
    out += c;
    ++i;
  }
  return out;
}

std::string first_paragraph(std::string_view text) {
  std::size_t start = 0;
  while (start < text.size() && is_space(text[start])) ++start;
  std::size_t end = text.size();
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] != '\n') continue;
    std::size_t j = i + 1;
    while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
    if (j < text.size() && text[j] == '\n') {
      end = i;
      break;
    }
  }
  std::string para = join(split_whitespace(text.substr(start, end - start)), " ");
  if (para.size() > kMaxParagraphChars) {
    std::size_t cut = kMaxParagraphChars;
    while (cut > 0 && (static_cast<unsigned char>(para[cut]) & 0xC0) == 0x80) --cut;
    para.resize(cut);
  }
  return para;
}

ArticleText fetch_article(const std::string& url, const Fetcher& fetcher,
                          const std::filesystem::path& cache_dir) {
  std::filesystem::path cache_file;
  if (!cache_dir.empty()) {
    cache_file = cache_dir / (cache_key(url) + ".json");
    if (std::filesystem::exists(cache_file)) {
      try {
        const auto j = nlohmann::json::parse(read_file(cache_file));
        if (j.at("url").get<std::string>() == url) {
          ArticleText a;
          a.url = url;
          a.first_paragraph = j.at("first_paragraph").get<std::string>();
          a.fetched_at = j.at("fetched_at").get<std::string>();
          a.source = ArticleSource::cache;
          return a;
        }
      } catch (const nlohmann::json::exception&) {
        // Unreadable entries are refetched and overwritten.
      }
    }
  }

  ArticleText a;
  a.url = url;
  a.first_paragraph = first_paragraph(strip_markup(fetcher.get(url)));
  a.fetched_at = now_iso8601();
  a.source = ArticleSource::live;

  if (!cache_file.empty()) {
    nlohmann::ordered_json j;
    j["url"] = a.url;
    j["first_paragraph"] = a.first_paragraph;
    j["fetched_at"] = a.fetched_at;
    std::filesystem::create_directories(cache_dir);
    write_file_atomic(cache_file, j.dump() + "\n");
  }
  return a;
}

std::vector<std::string> split_sentences(std::string_view paragraph) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    const auto s = trim(paragraph.substr(start, end - start));
    if (!s.empty()) sentences.emplace_back(s);
    start = end;
  };
  for (std::size_t i = 0; i < paragraph.size(); ++i) {
    const char c = paragraph[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (i + 1 == paragraph.size() || is_space(paragraph[i + 1])) flush(i + 1);
  }
  flush(paragraph.size());
  return sentences;
}

Polarity sentence_sentiment(std::string_view sentence, const LexiconBundle& lex,
                            const Tagger& tagger) {
  std::vector<std::string> words;
  for (auto& t : tokenize(sentence)) {
    if (!is_punct_only(t)) words.push_back(to_lower(t));
  }
  const auto tags = tagger.tag(words);
  std::vector<Token> tokens;
  for (std::size_t i = 0; i < words.size(); ++i) {
    tokens.push_back(Token{words[i], false, false, tags[i]});
  }
  tokens = mark_negations(std::move(tokens), lex);

  int score = 0;
  for (const auto& t : tokens) {
    auto e = lookup_polarity(lex, t.surface, t.pos.value_or(Pos::other));
    if (!e || e->polarity == Polarity::neutral) continue;
    int weight = e->strength == Strength::strong ? 2 : 1;
    if (e->polarity == Polarity::negative) weight = -weight;
    if (t.negated) weight = -weight;
    score += weight;
  }
  if (score > 0) return Polarity::positive;
  if (score < 0) return Polarity::negative;
  return Polarity::neutral;
}

UrlSentiment sentiment_fractions(const std::vector<ArticleText>& articles,
                                 const LexiconBundle& lex, const Tagger& tagger) {
  std::size_t pos = 0;
  std::size_t neg = 0;
  std::size_t neu = 0;
  for (const auto& a : articles) {
    for (const auto& s : split_sentences(a.first_paragraph)) {
      switch (sentence_sentiment(s, lex, tagger)) {
        case Polarity::positive: ++pos; break;
        case Polarity::negative: ++neg; break;
        case Polarity::neutral: ++neu; break;
      }
    }
  }
  const std::size_t total = pos + neg + neu;
  if (total == 0) return {};
  const double n = static_cast<double>(total);
  return {static_cast<double>(pos) / n, static_cast<double>(neg) / n,
          static_cast<double>(neu) / n};
}

UrlContext::UrlContext(std::shared_ptr<const Fetcher> fetcher, UrlContextOptions options)
    : fetcher_(std::move(fetcher)), options_(std::move(options)) {
  if (options_.max_in_flight == 0) options_.max_in_flight = 1;
}

ArticleText UrlContext::fetch_uncached(const std::string& url) {
  try {
    return fetch_article(url, *fetcher_, options_.cache_dir);
  } catch (const FetchFailed& e) {
    std::lock_guard lock(mutex_);
    warnings_.emplace(url, e.what());
  }
  ArticleText empty;
  empty.url = url;
  return empty;
}

ArticleText UrlContext::article(const std::string& url) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = articles_.find(url); it != articles_.end()) return it->second;
  }
  ArticleText a = fetch_uncached(url);
  std::lock_guard lock(mutex_);
  return articles_.emplace(url, std::move(a)).first->second;
}

void UrlContext::prefetch(const std::vector<std::string>& urls) {
  std::vector<std::string> todo;
  {
    std::lock_guard lock(mutex_);
    std::set<std::string> seen;
    for (const auto& u : urls) {
      if (!articles_.contains(u) && seen.insert(u).second) todo.push_back(u);
    }
  }
  if (todo.empty()) return;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < todo.size(); i = next++) article(todo[i]);
  };
  const std::size_t n_threads = std::min(options_.max_in_flight, todo.size());
  std::vector<std::jthread> threads;
  threads.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
}

std::vector<std::string> UrlContext::warnings() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [_, msg] : warnings_) out.push_back(msg);
  return out;
}

std::size_t UrlContext::warning_count() const {
  std::lock_guard lock(mutex_);
  return warnings_.size();
}

UrlSentiment url_sentiment_fractions(const std::vector<std::string>& urls, UrlContext& context,
                                     const LexiconBundle& lex, const Tagger& tagger) {
  std::vector<ArticleText> articles;
  articles.reserve(urls.size());
  for (const auto& u : urls) articles.push_back(context.article(u));
  return sentiment_fractions(articles, lex, tagger);
}

}  // namespace tweetsense
