#include "ceed/text.hpp"

namespace ceed::text {

std::string strip_non_ascii(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (static_cast<unsigned char>(c) < 0x80) out.push_back(c);
  }
  return out;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : s) {
    if (is_ascii_alnum(c)) {
      cur.push_back(to_lower(c));
    } else if (c == '\'') {
      continue;
    } else if (!cur.empty()) {
      words.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

std::vector<std::string> split_hashtag(std::string_view body) {
  std::vector<std::string> parts;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      parts.push_back(std::move(cur));
      cur.clear();
    }
  };
  auto lower = [](char c) { return c >= 'a' && c <= 'z'; };
  auto upper = [](char c) { return c >= 'A' && c <= 'Z'; };
  const std::size_t n = body.size();
  for (std::size_t i = 0; i < n; ++i) {
    const char c = body[i];
    if (!is_ascii_alnum(c)) {
      flush();
      continue;
    }
    if (!cur.empty()) {
      const char prev = body[i - 1];
      const bool digit_edge = is_ascii_digit(prev) != is_ascii_digit(c);
      const bool camel = lower(prev) && upper(c);
      // "NASAPhotos": split before the 'P' that starts a capitalized word.
      const bool acronym_end =
          upper(prev) && upper(c) && i + 1 < n && lower(body[i + 1]);
      if (digit_edge || camel || acronym_end) flush();
    }
    cur.push_back(to_lower(c));
  }
  flush();
  return parts;
}

std::string join(const std::vector<std::string>& words, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out.append(sep);
    out.append(words[i]);
  }
  return out;
}

std::string normalize_phrase(std::string_view s) {
  return join(split_words(strip_non_ascii(s)));
}

std::size_t count_tokens(std::string_view phrase) {
  if (phrase.empty()) return 0;
  std::size_t n = 1;
  for (char c : phrase) {
    if (c == ' ') ++n;
  }
  return n;
}

}  // namespace ceed::text
