#include "ceed/crossevent.hpp"

#include <algorithm>
#include <cmath>

#include "ceed/burst.hpp"
#include "ceed/parallel.hpp"

namespace ceed {

std::vector<SegmentId> representative_segments(const EventCluster& event,
                                               const SegmentIndex& index) {
  // Member segments only occur in event tweets: order by f_window.
  std::vector<SegmentId> segs = event.segments;
  std::sort(segs.begin(), segs.end(), [&](SegmentId a, SegmentId b) {
    const auto fa = index.at(a).f_window, fb = index.at(b).f_window;
    return fa != fb ? fa > fb : index.at(a).text < index.at(b).text;
  });
  segs.resize(std::min(segs.size(), ceil_sqrt(segs.size())));
  return segs;
}

double time_similarity_segments(const SegmentStats& a, const SegmentStats& b) {
  if (a.f_window == 0 || b.f_window == 0) return 0.0;
  const std::size_t M = std::min(a.f_sub.size(), b.f_sub.size());
  double sum = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    sum += static_cast<double>(a.f_sub[m]) / static_cast<double>(a.f_window) *
           (static_cast<double>(b.f_sub[m]) / static_cast<double>(b.f_window));
  }
  return std::clamp(sum, 0.0, 1.0);
}

double time_similarity_events(std::span<const SegmentId> reps_a,
                              std::span<const SegmentId> reps_b, const SegmentIndex& index) {
  if (reps_a.empty() || reps_b.empty()) return 0.0;
  double sum = 0.0;
  for (SegmentId a : reps_a) {
    for (SegmentId b : reps_b) sum += time_similarity_segments(index.at(a), index.at(b));
  }
  return sum / (static_cast<double>(reps_a.size()) * static_cast<double>(reps_b.size()));
}

namespace {

struct EventContext {
  std::vector<SegmentId> reps;
  WeightedDoc doc;
};

EventContext context_of(const EventCluster& e, const SegmentIndex& index,
                        const DocumentFrequency& df) {
  return {representative_segments(e, index), weigh(count_terms(index, e.tweets), df)};
}

double alpha_of(const EventContext& a, const EventContext& b, const SegmentIndex& index) {
  const double t = time_similarity_events(a.reps, b.reps, index);
  return std::tanh(t * cosine(a.doc, b.doc));
}

}  // namespace

double cross_factor(const EventCluster& a, const EventCluster& b, const SegmentIndex& index,
                    const DocumentFrequency& df) {
  if (&a == &b || (!a.id.empty() && a.id == b.id)) return 1.0;
  return alpha_of(context_of(a, index, df), context_of(b, index, df), index);
}

CrossEventMatrix::CrossEventMatrix(std::vector<std::string> event_ids)
    : ids_(std::move(event_ids)), alpha_(ids_.size() * ids_.size(), 0.0) {
  for (std::size_t i = 0; i < ids_.size(); ++i) alpha_[i * ids_.size() + i] = 1.0;
}

void CrossEventMatrix::set(std::size_t i, std::size_t j, double v) {
  alpha_[i * ids_.size() + j] = v;
  alpha_[j * ids_.size() + i] = v;
}

CrossEventMatrix cross_matrix(std::span<const EventCluster> events, const SegmentIndex& index,
                              const DocumentFrequency& df, int workers) {
  const std::size_t n = events.size();
  std::vector<EventContext> ctx(n);
  parallel_for(n, workers, [&](std::size_t i) { ctx[i] = context_of(events[i], index, df); });
  std::vector<std::vector<double>> rows(n);
  parallel_for(n, workers, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) rows[i].push_back(alpha_of(ctx[i], ctx[j], index));
  });
  std::vector<std::string> ids;
  for (const auto& e : events) ids.push_back(e.id);
  CrossEventMatrix m(std::move(ids));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, rows[i][j - i - 1]);
  }
  return m;
}

}  // namespace ceed
