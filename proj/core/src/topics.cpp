#include "ceed/topics.hpp"

#include <algorithm>
#include <stdexcept>

#include "ceed/burst.hpp"
#include "ceed/log.hpp"
#include "ceed/parallel.hpp"

namespace ceed {

__extension__ using Wide = __int128;

EventSpan::EventSpan(const EventCluster& event, const SegmentIndex& index, int subwindows)
    : subwindows_(subwindows), tweets_(event.tweets) {
  if (subwindows_ < 1) throw std::invalid_argument("event subwindows must be >= 1");
  if (tweets_.empty()) throw std::invalid_argument("event has no tweets");
  const auto& corpus = index.corpus();
  first_ = last_ = corpus.tweet(tweets_.front()).created_at;
  for (TweetIndex t : tweets_) {
    first_ = std::min(first_, corpus.tweet(t).created_at);
    last_ = std::max(last_, corpus.tweet(t).created_at);
  }
  sub_totals_.assign(static_cast<std::size_t>(subwindows_), 0);
  local_sub_.reserve(tweets_.size());
  for (TweetIndex t : tweets_) {
    const int m = local_subwindow(corpus.tweet(t).created_at);
    local_sub_.push_back(m);
    for (const auto& occ : index.segments_of(t)) {
      auto& c = counts_[occ.segment];
      if (c.per_sub.empty()) c.per_sub.assign(static_cast<std::size_t>(subwindows_), 0);
      c.total += occ.weight;
      c.per_sub[static_cast<std::size_t>(m)] += occ.weight;
      ++c.tweet_count;
      sub_totals_[static_cast<std::size_t>(m)] += occ.weight;
    }
  }
  segments_.reserve(counts_.size());
  for (const auto& [id, c] : counts_) segments_.push_back(id);
  std::sort(segments_.begin(), segments_.end());
}

int EventSpan::local_subwindow(Timestamp ts) const {
  if (last_ == first_) return 0;
  const Wide offset = ts - first_;
  const auto idx = static_cast<int>(offset * subwindows_ / (last_ - first_));
  return std::clamp(idx, 0, subwindows_ - 1);
}

std::vector<SegmentId> filter_topic_segments(const EventSpan& span, const SegmentIndex& index) {
  const std::size_t n_tweets = span.tweets().size();
  std::vector<SegmentId> kept;
  for (SegmentId s : span.segments()) {
    if (2 * span.counts(s).tweet_count <= n_tweets) kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end(), [&](SegmentId a, SegmentId b) {
    const auto fa = span.counts(a).total, fb = span.counts(b).total;
    return fa != fb ? fa > fb : index.at(a).text < index.at(b).text;
  });
  kept.resize(std::min(kept.size(), ceil_sqrt(kept.size())));
  return kept;
}

TemporalProfile local_profile(const EventSpan& span, SegmentId segment,
                              const SegmentIndex& index, const DocumentFrequency& df) {
  const int M = span.subwindows();
  const auto& counts = span.counts(segment);
  std::vector<std::vector<TweetIndex>> by_sub(static_cast<std::size_t>(M));
  const auto tweets = span.tweets();
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    for (const auto& occ : index.segments_of(tweets[i])) {
      if (occ.segment == segment) {
        by_sub[static_cast<std::size_t>(span.local_subwindow_of(i))].push_back(tweets[i]);
        break;
      }
    }
  }
  TemporalProfile p;
  p.weight.resize(static_cast<std::size_t>(M));
  p.docs.resize(static_cast<std::size_t>(M));
  for (std::size_t m = 0; m < static_cast<std::size_t>(M); ++m) {
    p.weight[m] = counts.total == 0 ? 0.0
                                    : static_cast<double>(counts.per_sub[m]) /
                                          static_cast<double>(counts.total);
    if (!by_sub[m].empty()) p.docs[m] = weigh(count_terms(index, by_sub[m]), df);
  }
  return p;
}

std::vector<std::vector<SegmentId>> cluster_topics(const EventSpan& span,
                                                   std::span<const SegmentId> filtered,
                                                   const SegmentIndex& index,
                                                   const DocumentFrequency& df, int k) {
  if (filtered.size() < 2) return {};
  std::vector<TemporalProfile> profiles;
  std::vector<std::string> labels;
  for (SegmentId s : filtered) {
    profiles.push_back(local_profile(span, s, index, df));
    labels.push_back(index.at(s).text);
  }
  const auto matrix = similarity_matrix(profiles, std::move(labels));
  const auto jp = jarvis_patrick(matrix, k);
  std::vector<std::vector<SegmentId>> topics;
  for (const auto& cluster : jp.clusters) {
    std::vector<SegmentId> t;
    for (std::size_t node : cluster) t.push_back(filtered[node]);
    topics.push_back(std::move(t));
  }
  return topics;
}

double topic_popularity(const EventSpan& span, std::span<const SegmentId> topic, int m) {
  const auto total = span.subwindow_total(m);
  if (total == 0) return 0.0;
  double sum = 0.0;
  for (SegmentId s : topic) {
    sum += static_cast<double>(span.counts(s).per_sub[static_cast<std::size_t>(m)]) /
           static_cast<double>(total);
  }
  return std::clamp(sum, 0.0, 1.0);
}

TopicTimeline evolve(const EventCluster& event, const SegmentIndex& index,
                     const DocumentFrequency& df, int k, int subwindows) {
  const EventSpan span(event, index, subwindows);
  TopicTimeline tl;
  tl.event_id = event.id;
  tl.label = event.label;
  tl.subwindows = subwindows;
  tl.start = span.first();
  tl.end = span.last();
  tl.filtered = filter_topic_segments(span, index);
  const auto clusters = cluster_topics(span, tl.filtered, index, df, k);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    TopicCluster topic;
    topic.topic_id = static_cast<int>(i);
    topic.segments = clusters[i];
    for (int m = 0; m < subwindows; ++m) {
      topic.popularity.push_back(topic_popularity(span, topic.segments, m));
    }
    tl.topics.push_back(std::move(topic));
  }
  if (tl.topics.empty()) {
    tl.diagnostic = tl.filtered.size() < 2 ? "fewer than two segments left after filtering"
                                           : "no mutual-neighbor topic clusters";
    log::info("event ", event.id, ": ", tl.diagnostic);
  }
  return tl;
}

std::vector<TopicTimeline> evolve_all(std::span<const EventCluster> events,
                                      const SegmentIndex& index, const DocumentFrequency& df,
                                      int k, int subwindows, int workers) {
  std::vector<TopicTimeline> out(events.size());
  parallel_for(events.size(), workers, [&](std::size_t i) {
    out[i] = evolve(events[i], index, df, k, subwindows);
  });
  return out;
}

}  // namespace ceed
