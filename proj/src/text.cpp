#include "tweetsense/text.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "tweetsense/error.hpp"

namespace tweetsense {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool is_punct_only(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_punct(c)) return false;
  }
  return true;
}

std::optional<UrlSpan> find_url(std::string_view s, std::size_t from) {
  const std::string lower = to_lower(s);
  std::size_t pos = from;
  while (pos < lower.size()) {
    const std::size_t a = lower.find("http://", pos);
    const std::size_t b = lower.find("https://", pos);
    const std::size_t start = std::min(a, b);
    if (start == std::string::npos) return std::nullopt;
    const std::size_t scheme_len = start == b ? 8 : 7;
    std::size_t end = start;
    while (end < s.size() && !is_space(s[end])) ++end;
    while (end > start + scheme_len && std::string_view(".,;:!?)]}'\"").find(s[end - 1]) !=
                                           std::string_view::npos) {
      --end;
    }
    const bool boundary_ok = start == 0 || !is_word_char(s[start - 1]);
    if (boundary_ok && end > start + scheme_len) return UrlSpan{start, end};
    pos = start + scheme_len;
  }
  return std::nullopt;
}

bool is_all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_digit(c)) return false;
  }
  return true;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile(path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(std::string_view content) {
  std::vector<std::string> lines;
  if (content.empty()) return lines;
  auto parts = split(content, '\n');
  if (!content.empty() && content.back() == '\n') parts.pop_back();
  for (auto& line : parts) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  static std::atomic<unsigned> counter{0};
  std::ostringstream suffix;
  suffix << ".tmp." << std::this_thread::get_id() << "." << counter++;
  std::filesystem::path tmp = path;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace tweetsense
