#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ceed/ingest.hpp"
#include "ceed/lexicon.hpp"
#include "ceed/text.hpp"

namespace ceed {

using SegmentId = std::uint32_t;
using TweetIndex = std::uint32_t;

class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(std::vector<std::string> words);

  // The small English list bundled with the library.
  static StopwordSet english();
  // One word per line; blank lines and lines starting with '#' ignored.
  static StopwordSet from_file(const std::filesystem::path& path);

  bool contains(std::string_view word) const { return words_.count(std::string(word)) != 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

struct Segment {
  std::string text;
  bool hashtag_origin = false;
  std::size_t first_token = 0;
  std::size_t token_count = 0;
};

// Leftmost-longest dictionary segmentation. At each position the longest
// lexicon phrase of at most max_len tokens wins, otherwise the token becomes
// a unigram. Segments made only of stopwords are dropped.
std::vector<Segment> segment_tweet(std::span<const text::Token> tokens,
                                   const TitlesLexicon& lexicon,
                                   const StopwordSet& stopwords);

struct SegmentStats {
  std::string text;
  bool hashtag_origin = false;  // at least one occurrence came from a hashtag
  std::uint64_t f_window = 0;   // weighted tweet frequency
  std::vector<std::uint64_t> f_sub;
  std::vector<TweetIndex> tweets;          // ascending, hence grouped by subwindow
  std::vector<std::uint32_t> sub_offsets;  // tweets_in(m) = tweets[off[m], off[m+1])
  std::vector<UserId> users;               // authors and retweeters, sorted
  std::uint64_t rc_sum = 0;
  std::uint64_t fc_sum = 0;

  std::span<const TweetIndex> tweets_in(int m) const {
    const auto b = sub_offsets[static_cast<std::size_t>(m)];
    const auto e = sub_offsets[static_cast<std::size_t>(m) + 1];
    return std::span<const TweetIndex>(tweets).subspan(b, e - b);
  }
};

struct Occurrence {
  SegmentId segment;
  std::uint32_t weight;  // hashtag weight H or 1
};

// Corpus-wide segment statistics. Holds a pointer to the corpus, which must
// outlive the index. Segment ids follow lexicographic order of the text.
class SegmentIndex {
 public:
  const Corpus& corpus() const { return *corpus_; }
  int subwindows() const { return corpus_->subwindows(); }
  int hashtag_weight() const { return hashtag_weight_; }

  std::size_t size() const { return stats_.size(); }
  const SegmentStats& at(SegmentId id) const { return stats_[id]; }
  std::span<const SegmentStats> stats() const { return stats_; }
  std::optional<SegmentId> find(std::string_view text) const;

  // Distinct segments of a tweet with their occurrence weight.
  std::span<const Occurrence> segments_of(TweetIndex t) const;
  // Every segment of a tweet in order, duplicates retained.
  std::span<const SegmentId> terms_of(TweetIndex t) const;
  std::uint32_t tweet_weight(TweetIndex t) const { return tweet_weight_[t]; }

  std::size_t total_tweets() const { return corpus_->total_tweets(); }
  std::size_t tweets_in_subwindow(int m) const {
    return corpus_->per_subwindow()[static_cast<std::size_t>(m)];
  }
  // Tweet counts where a tweet carrying any hashtag segment counts H times.
  std::uint64_t weighted_total() const { return weighted_total_; }
  std::uint64_t weighted_subwindow(int m) const {
    return weighted_sub_[static_cast<std::size_t>(m)];
  }

 private:
  friend SegmentIndex build_index(const Corpus&, const TitlesLexicon&,
                                  const StopwordSet&, int, int);

  const Corpus* corpus_ = nullptr;
  int hashtag_weight_ = 1;
  std::vector<SegmentStats> stats_;
  std::unordered_map<std::string, SegmentId> by_text_;
  std::vector<std::size_t> seg_offsets_;
  std::vector<Occurrence> seg_flat_;
  std::vector<std::size_t> term_offsets_;
  std::vector<SegmentId> term_flat_;
  std::vector<std::uint32_t> tweet_weight_;
  std::uint64_t weighted_total_ = 0;
  std::vector<std::uint64_t> weighted_sub_;
};

SegmentIndex build_index(const Corpus& corpus, const TitlesLexicon& lexicon,
                         const StopwordSet& stopwords, int hashtag_weight,
                         int workers = 1);

}  // namespace ceed
