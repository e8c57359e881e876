#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ceed/burst.hpp"
#include "ceed/lexicon.hpp"
#include "ceed/segment.hpp"
#include "ceed/tfidf.hpp"

namespace ceed {

// f_t(s,m) / f_{s,t}; sums to 1 over subwindows.
double subwindow_weight(const SegmentStats& stats, int m);

// Per-subwindow frequency share and TF-IDF document of one segment. Built
// over either the global window or an event-local partition.
struct TemporalProfile {
  std::vector<double> weight;
  std::vector<WeightedDoc> docs;
};

TemporalProfile window_profile(const SegmentIndex& index, SegmentId segment,
                               const DocumentFrequency& df);

// sum_m w_a(m) * w_b(m) * cos(T_a(m), T_b(m)), summed in subwindow order.
double profile_similarity(const TemporalProfile& a, const TemporalProfile& b);
// sum_m w_a(m) * w_b(m).
double profile_overlap(const TemporalProfile& a, const TemporalProfile& b);

double segment_similarity(const SegmentIndex& index, SegmentId a, SegmentId b,
                          const DocumentFrequency& df);

class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  double at(std::size_t i, std::size_t j) const { return values_[i * labels_.size() + j]; }
  void set(std::size_t i, std::size_t j, double v);

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
};

// Pairwise profile_similarity; each unordered pair is computed once.
SimilarityMatrix similarity_matrix(std::span<const TemporalProfile> profiles,
                                   std::vector<std::string> labels, int workers = 1);

struct JarvisPatrickResult {
  // Node indices, each cluster sorted by label; clusters ordered by their
  // first label.
  std::vector<std::vector<std::size_t>> clusters;
  // Mutual-neighbor edges inside each cluster, (lower label, higher label).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edges;
  std::vector<std::size_t> discarded;
};

// k most similar distinct nodes with similarity > 0; ties by label.
std::vector<std::vector<std::size_t>> nearest_neighbors(const SimilarityMatrix& m, int k);

// Edge (a,b) iff each is in the other's k-nearest list; connected components
// with at least two nodes become clusters.
JarvisPatrickResult jarvis_patrick(const SimilarityMatrix& m, int k);

// e^Q(s) for a single word; otherwise max over contiguous sub-phrases t of
// e^Q(t) - 1.
double newsworthiness(std::string_view segment, const TitlesLexicon& lexicon);

// (mean newsworthiness) * (sum of edge similarities / |segments|).
// Throws std::invalid_argument for fewer than two segments.
double eventworthiness(std::span<const double> newsworthiness,
                       std::span<const double> edge_similarities);

struct EventEdge {
  SegmentId a = 0;
  SegmentId b = 0;
  double similarity = 0.0;
};

struct EventCluster {
  std::string id;
  std::vector<SegmentId> segments;  // burst weight descending, text ascending
  std::vector<EventEdge> pair_sims;
  std::vector<TweetIndex> tweets;   // ascending
  double worthiness = 0.0;
  std::string label;                // text of the highest-weight segment
};

// Keeps e iff mu(e) > 0 and mu_max / mu(e) <= tau. Order is preserved.
std::vector<EventCluster> filter_events(std::vector<EventCluster> candidates, double tau);

struct EventDetection {
  std::vector<BurstScore> bursty;
  std::vector<TemporalProfile> profiles;  // aligned with bursty
  SimilarityMatrix similarity;            // labels are bursty texts
  JarvisPatrickResult clustering;
  std::vector<EventCluster> candidates;   // ids C1.., worthiness descending
  std::vector<EventCluster> events;       // ids E1.., worthiness descending
};

EventDetection detect_events(const SegmentIndex& index, const TitlesLexicon& lexicon,
                             const DocumentFrequency& df, std::vector<BurstScore> bursty,
                             int k, double tau, int workers = 1);

}  // namespace ceed
