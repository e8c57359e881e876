#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ceed/events.hpp"
#include "ceed/segment.hpp"
#include "ceed/tfidf.hpp"

namespace ceed {

// An event's tweets re-partitioned into its own subwindows: M_e equal
// pieces of [first tweet time, last tweet time], last boundary inclusive.
class EventSpan {
 public:
  struct SegmentCounts {
    std::uint64_t total = 0;           // weighted occurrences in event tweets
    std::vector<std::uint64_t> per_sub;
    std::size_t tweet_count = 0;       // event tweets containing the segment
  };

  EventSpan(const EventCluster& event, const SegmentIndex& index, int subwindows);

  int subwindows() const { return subwindows_; }
  Timestamp first() const { return first_; }
  Timestamp last() const { return last_; }
  std::span<const TweetIndex> tweets() const { return tweets_; }
  int local_subwindow_of(std::size_t i) const { return local_sub_[i]; }
  int local_subwindow(Timestamp ts) const;

  // Every segment that occurs in an event tweet, ascending id.
  const std::vector<SegmentId>& segments() const { return segments_; }
  const SegmentCounts& counts(SegmentId s) const { return counts_.at(s); }
  // Weighted occurrences of all segments in local subwindow m.
  std::uint64_t subwindow_total(int m) const {
    return sub_totals_[static_cast<std::size_t>(m)];
  }

 private:
  int subwindows_;
  Timestamp first_ = 0;
  Timestamp last_ = 0;
  std::vector<TweetIndex> tweets_;
  std::vector<int> local_sub_;
  std::vector<SegmentId> segments_;
  std::unordered_map<SegmentId, SegmentCounts> counts_;
  std::vector<std::uint64_t> sub_totals_;
};

// Drops segments found in more than half of the event's tweets, orders the
// rest by event-local frequency (ties by text) and keeps ceil(sqrt(N)).
std::vector<SegmentId> filter_topic_segments(const EventSpan& span, const SegmentIndex& index);

// Segment profile over the event-local subwindows and event tweets only.
TemporalProfile local_profile(const EventSpan& span, SegmentId segment,
                              const SegmentIndex& index, const DocumentFrequency& df);

// Jarvis-Patrick over local profile similarities; singletons dropped.
std::vector<std::vector<SegmentId>> cluster_topics(const EventSpan& span,
                                                   std::span<const SegmentId> filtered,
                                                   const SegmentIndex& index,
                                                   const DocumentFrequency& df, int k);

// T(m) = sum over topic segments of freq(s, m) / subwindow_total(m).
double topic_popularity(const EventSpan& span, std::span<const SegmentId> topic, int m);

struct TopicCluster {
  int topic_id = 0;
  std::vector<SegmentId> segments;
  std::vector<double> popularity;  // one value per event-local subwindow
};

struct TopicTimeline {
  std::string event_id;
  std::string label;
  int subwindows = 0;
  Timestamp start = 0;
  Timestamp end = 0;
  std::vector<SegmentId> filtered;
  std::vector<TopicCluster> topics;
  std::string diagnostic;  // set when no topic survives
};

TopicTimeline evolve(const EventCluster& event, const SegmentIndex& index,
                     const DocumentFrequency& df, int k, int subwindows = 10);

std::vector<TopicTimeline> evolve_all(std::span<const EventCluster> events,
                                      const SegmentIndex& index, const DocumentFrequency& df,
                                      int k, int subwindows = 10, int workers = 1);

}  // namespace ceed
