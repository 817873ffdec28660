#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small string and file helpers shared by the loaders and the tokenizer.
// Case folding is ASCII-only; bytes >= 0x80 pass through untouched.
namespace tweetsense {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_whitespace(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
inline bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
/// Letters, digits and any non-ASCII byte.
inline bool is_word_char(char c) {
  return is_alpha(c) || is_digit(c) || static_cast<unsigned char>(c) >= 0x80;
}
inline bool is_punct(char c) { return !is_space(c) && !is_word_char(c); }

bool is_punct_only(std::string_view s);

struct UrlSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Next http:// or https:// URL at or after `from`. A URL runs to the next
/// whitespace, minus trailing sentence punctuation.
std::optional<UrlSpan> find_url(std::string_view s, std::size_t from = 0);
bool is_all_digits(std::string_view s);

/// Reads a whole file; throws MissingFile.
std::string read_file(const std::filesystem::path& path);

/// Splits file content into lines, dropping a trailing '\r' on each.
std::vector<std::string> lines_of(std::string_view content);

/// Writes via a temporary sibling then renames, so readers never see a torn file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace tweetsense
