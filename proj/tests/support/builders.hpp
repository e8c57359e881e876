#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ceed/ingest.hpp"

namespace ceed::testing {

constexpr Timestamp kT0 = 1550102400;  // 2019-02-14T00:00:00Z
constexpr Timestamp kDay = 86400;

inline RawTweetRecord rec(std::string id, std::string text, std::string user, Timestamp at,
                          std::uint64_t rc = 0, std::uint64_t followers = 0) {
  RawTweetRecord r;
  r.id = std::move(id);
  r.text = std::move(text);
  r.user_id = std::move(user);
  r.created_at = at;
  r.retweet_count = rc;
  r.followers_count = followers;
  return r;
}

inline RawTweetRecord retweet(std::string id, std::string of, std::string user, Timestamp at) {
  RawTweetRecord r = rec(std::move(id), "RT", std::move(user), at);
  r.is_retweet = true;
  r.retweet_of = std::move(of);
  return r;
}

inline WindowConfig ten_days(int subwindows = 10, int hashtag_weight = 3) {
  WindowConfig w;
  w.window_start = kT0;
  w.window_end = kT0 + 10 * kDay;
  w.subwindows = subwindows;
  w.hashtag_weight = hashtag_weight;
  return w;
}

inline std::vector<std::string> texts(const std::vector<text::Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

}  // namespace ceed::testing
