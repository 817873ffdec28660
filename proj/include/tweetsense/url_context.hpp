#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "tweetsense/lexicons.hpp"

namespace tweetsense {

class Tagger;

enum class ArticleSource { live, cache };

struct ArticleText {
  std::string url;
  /// Empty when the fetch failed or the page had no text; never invented.
  std::string first_paragraph;
  std::string fetched_at;
  ArticleSource source = ArticleSource::live;

  bool operator==(const ArticleText&) const = default;
};

/// Fractions of positive / negative / neutral sentences. Sum to 1 when at
/// least one sentence was scored, all zero otherwise.
struct UrlSentiment {
  double frac_pos = 0.0;
  double frac_neg = 0.0;
  double frac_neu = 0.0;

  bool operator==(const UrlSentiment&) const = default;
};

/// All http/https URLs in left-to-right order, duplicates kept.
std::vector<std::string> extract_urls(std::string_view text);

/// Retrieves the raw body behind a URL. Implementations throw FetchFailed.
class Fetcher {
 public:
  virtual ~Fetcher() = default;
  virtual std::string get(const std::string& url) const = 0;
};

/// Refuses every request; used for --offline.
class OfflineFetcher final : public Fetcher {
 public:
  std::string get(const std::string& url) const override;
};

struct HttpFetcherOptions {
  std::chrono::milliseconds timeout{5000};
};

/// Plain HTTP(S) GET following at most five redirects.
class HttpFetcher final : public Fetcher {
 public:
  static constexpr int kMaxRedirects = 5;

  explicit HttpFetcher(HttpFetcherOptions options = {}) : options_(options) {}
  std::string get(const std::string& url) const override;

 private:
  HttpFetcherOptions options_;
};

/// Lowercase hex SHA-256 of the URL; names the cache file.
std::string cache_key(std::string_view url);

/// Drops scripts, styles, comments and tags; block-level tags become blank
/// lines. Decodes the common named and numeric entities.
std::string strip_markup(std::string_view html);

inline constexpr std::size_t kMaxParagraphChars = 1000;

/// Text up to the first blank line, capped at kMaxParagraphChars, with
/// whitespace runs collapsed.
std::string first_paragraph(std::string_view text);

/// Cache lookup, else fetch + strip + cache write (atomic). An empty
/// `cache_dir` disables caching. Throws FetchFailed on a miss the fetcher
/// cannot serve.
ArticleText fetch_article(const std::string& url, const Fetcher& fetcher,
                          const std::filesystem::path& cache_dir);

/// Splits on '.', '!' or '?' followed by whitespace or end of text.
std::vector<std::string> split_sentences(std::string_view paragraph);

/// Lexicon score: +2 strong positive, +1 weak positive, -1 weak negative,
/// -2 strong negative, with negation flips. Sign decides the class.
Polarity sentence_sentiment(std::string_view sentence, const LexiconBundle& lex,
                            const Tagger& tagger);

/// Pools the sentences of every article's first paragraph.
UrlSentiment sentiment_fractions(const std::vector<ArticleText>& articles,
                                 const LexiconBundle& lex, const Tagger& tagger);

struct UrlContextOptions {
  std::filesystem::path cache_dir;
  std::size_t max_in_flight = 4;
};

/// Per-run article store: each distinct URL is fetched at most once, and
/// each failing URL yields exactly one warning. Thread-safe.
class UrlContext {
 public:
  UrlContext(std::shared_ptr<const Fetcher> fetcher, UrlContextOptions options);

  /// Never throws on fetch failure; returns an empty paragraph instead.
  ArticleText article(const std::string& url);

  /// Fetches the not-yet-seen URLs with at most max_in_flight requests
  /// outstanding.
  void prefetch(const std::vector<std::string>& urls);

  /// One message per failed URL, ordered by URL.
  std::vector<std::string> warnings() const;
  std::size_t warning_count() const;

 private:
  ArticleText fetch_uncached(const std::string& url);

  std::shared_ptr<const Fetcher> fetcher_;
  UrlContextOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, ArticleText> articles_;
  std::map<std::string, std::string> warnings_;
};

UrlSentiment url_sentiment_fractions(const std::vector<std::string>& urls, UrlContext& context,
                                     const LexiconBundle& lex, const Tagger& tagger);

}  // namespace tweetsense
