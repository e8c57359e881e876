#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ceed/text.hpp"

namespace ceed {

// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;
using UserId = std::uint32_t;

// Accepts "YYYY-MM-DDTHH:MM:SS" followed by "Z", "+00:00" or nothing;
// a space may replace the 'T'. Throws std::invalid_argument otherwise.
Timestamp parse_timestamp(std::string_view iso);
std::string format_timestamp(Timestamp ts);

struct RawTweetRecord {
  std::string id;
  std::string text;
  std::string user_id;
  std::optional<std::string> user_name;
  std::uint64_t followers_count = 0;
  std::uint64_t retweet_count = 0;
  Timestamp created_at = 0;
  bool is_retweet = false;
  std::optional<std::string> retweet_of;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses one JSON object per line. Throws ParseError on malformed input.
RawTweetRecord parse_tweet(std::string_view line);

struct ReadStats {
  std::size_t lines = 0;    // non-blank lines seen
  std::size_t skipped = 0;  // malformed or duplicate-id lines
  std::vector<std::string> diagnostics;  // first few skip reasons
};

// Reads newline-delimited records, skipping (and counting) malformed lines
// and lines whose id was already seen.
std::vector<RawTweetRecord> read_records(std::istream& in, ReadStats& stats);

// Lowercased handle -> display name.
using MentionMap = std::unordered_map<std::string, std::string>;

// URLs and non-ASCII bytes are removed, @mentions become the display name
// (or vanish when unknown), hashtags are split on case boundaries and
// flagged, everything is lowercased. Stopwords are kept so segmentation can
// see them.
std::vector<text::Token> normalize_text(std::string_view raw,
                                        const MentionMap& mentions);

struct WindowConfig {
  Timestamp window_start = 0;
  Timestamp window_end = 0;
  int subwindows = 10;
  int hashtag_weight = 3;

  // Throws ConfigError.
  void validate() const;
  bool contains(Timestamp ts) const {
    return ts >= window_start && ts < window_end;
  }
  // Equal-length partition of the half-open window. Requires contains(ts).
  int subwindow_of(Timestamp ts) const;
};

struct Tweet {
  std::string id;
  std::vector<text::Token> tokens;
  UserId user = 0;
  // Distinct users that retweeted this tweet, excluding the author.
  std::vector<UserId> retweeters;
  // Record counter plus one per folded retweet.
  std::uint64_t retweet_count = 0;
  Timestamp created_at = 0;
  int subwindow = 0;
};

struct CorpusCounts {
  std::size_t records = 0;
  std::size_t kept = 0;
  std::size_t retweets = 0;         // in-window retweet records
  std::size_t orphan_retweets = 0;  // subset of retweets with no kept original
  std::size_t out_of_window = 0;
};

class Corpus {
 public:
  Corpus() = default;

  std::span<const Tweet> tweets() const { return tweets_; }
  const Tweet& tweet(std::size_t i) const { return tweets_[i]; }
  std::size_t total_tweets() const { return tweets_.size(); }
  std::span<const std::size_t> per_subwindow() const { return per_subwindow_; }
  int subwindows() const { return static_cast<int>(per_subwindow_.size()); }
  const WindowConfig& window() const { return window_; }
  const CorpusCounts& counts() const { return counts_; }

  std::size_t user_count() const { return user_ids_.size(); }
  const std::string& user_id(UserId u) const { return user_ids_[u]; }
  // Maximum followers_count observed for the user across all records.
  std::uint64_t followers(UserId u) const { return followers_[u]; }
  std::optional<UserId> find_user(std::string_view user_id) const;

 private:
  friend Corpus build_corpus(std::span<const RawTweetRecord>, const WindowConfig&);

  WindowConfig window_;
  std::vector<Tweet> tweets_;
  std::vector<std::size_t> per_subwindow_;
  std::vector<std::string> user_ids_;
  std::vector<std::uint64_t> followers_;
  std::unordered_map<std::string, UserId> user_index_;
  CorpusCounts counts_;
};

// Folds retweets into their originals, drops out-of-window records and
// assigns subwindows. Tweets are ordered by (created_at, id). Throws
// EmptyWindowError when nothing survives.
Corpus build_corpus(std::span<const RawTweetRecord> records, const WindowConfig& cfg);

// Smallest window [min created_at, max created_at + 1) over the records.
std::optional<std::pair<Timestamp, Timestamp>> data_span(
    std::span<const RawTweetRecord> records);

}  // namespace ceed
