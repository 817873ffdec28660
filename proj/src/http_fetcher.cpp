#include <httplib.h>

#include "tweetsense/error.hpp"
#include "tweetsense/url_context.hpp"

namespace tweetsense {

static_assert(CPPHTTPLIB_REDIRECT_MAX_COUNT == HttpFetcher::kMaxRedirects,
              "httplib must be configured with the fetcher's redirect limit");

namespace {

struct SplitUrl {
  std::string origin;
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw FetchFailed(url, "not an absolute url");
  const std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::string HttpFetcher::get(const std::string& url) const {
  const auto [origin, path] = split_url(url);
  httplib::Client client(origin);
  if (!client.is_valid()) throw FetchFailed(url, "unsupported url");
  client.set_follow_location(true);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  const auto micros =
      std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  auto res = client.Get(path);
  if (!res) throw FetchFailed(url, httplib::to_string(res.error()));
  if (res->status >= 300 && res->status < 400) throw FetchFailed(url, "too many redirects");
  if (res->status != 200) throw FetchFailed(url, "http status " + std::to_string(res->status));
  return res->body;
}

}  // namespace tweetsense
