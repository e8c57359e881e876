#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ceed/events.hpp"
#include "ceed/segment.hpp"
#include "ceed/tfidf.hpp"

namespace ceed {

// Event segments by event-local occurrence share, descending (ties by
// text), truncated to ceil(sqrt(N)).
std::vector<SegmentId> representative_segments(const EventCluster& event,
                                               const SegmentIndex& index);

// sum_m w_t(a,m) * w_t(b,m) over the global subwindows.
double time_similarity_segments(const SegmentStats& a, const SegmentStats& b);

// Mean of time_similarity_segments over representative pairs.
double time_similarity_events(std::span<const SegmentId> reps_a,
                              std::span<const SegmentId> reps_b, const SegmentIndex& index);

// tanh(t(e_a,e_b) * cos(T_s(e_a), T_s(e_b))). The same event (by id) yields
// exactly 1.
double cross_factor(const EventCluster& a, const EventCluster& b, const SegmentIndex& index,
                    const DocumentFrequency& df);

class CrossEventMatrix {
 public:
  CrossEventMatrix() = default;
  explicit CrossEventMatrix(std::vector<std::string> event_ids);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& event_ids() const { return ids_; }
  double at(std::size_t i, std::size_t j) const { return alpha_[i * ids_.size() + j]; }
  void set(std::size_t i, std::size_t j, double v);

 private:
  std::vector<std::string> ids_;
  std::vector<double> alpha_;
};

CrossEventMatrix cross_matrix(std::span<const EventCluster> events, const SegmentIndex& index,
                              const DocumentFrequency& df, int workers = 1);

}  // namespace ceed
