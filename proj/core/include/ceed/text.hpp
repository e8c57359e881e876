#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ceed::text {

struct Token {
  std::string text;
  bool from_hashtag = false;

  friend bool operator==(const Token&, const Token&) = default;
};

inline bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || is_ascii_digit(c); }
inline char to_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// Drops every byte outside the 7-bit ASCII range.
std::string strip_non_ascii(std::string_view s);

// Lowercased alphanumeric runs. Apostrophes are deleted ("don't" -> "dont"),
// every other non-alphanumeric byte separates words.
std::vector<std::string> split_words(std::string_view s);

// Splits a hashtag body on case and digit boundaries and underscores:
// "JusticeForAsifa" -> justice/for/asifa, "NASAPhotos" -> nasa/photos,
// "Pulwama2019" -> pulwama/2019. Output is lowercased.
std::vector<std::string> split_hashtag(std::string_view body);

// Canonical phrase form: split_words joined by single spaces.
std::string normalize_phrase(std::string_view s);

std::string join(const std::vector<std::string>& words, std::string_view sep = " ");

// Number of space separated tokens in a normalized phrase.
std::size_t count_tokens(std::string_view phrase);

}  // namespace ceed::text
