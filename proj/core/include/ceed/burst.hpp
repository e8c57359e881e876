#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ceed/segment.hpp"

namespace ceed {

struct Expectation {
  double expected = 0.0;
  double sigma = 0.0;
  // P_s >= 1: the segment is in every (weighted) tweet and cannot burst.
  bool saturated = false;
};

// Binomial expectation of a segment's weighted frequency in subwindow m,
// with P_s estimated over the whole window. nullopt when the subwindow has
// no tweets.
std::optional<Expectation> expected_and_sigma(const SegmentIndex& index, SegmentId segment,
                                              int m);

double sigmoid(double x);
// sigmoid(10 * (f - (E + sigma)) / sigma); requires sigma > 0.
double burst_probability(double frequency, double expected, double sigma);
// P_b * ln(1+u) * ln(1+rc) * ln(1 + ln(1+fc)).
double segment_weight(double probability, double users, double retweets, double followers);

struct BurstScore {
  SegmentId segment = 0;
  std::string text;
  int bursty_subwindow = 0;
  double probability = 0.0;
  double weight = 0.0;
};

// Ceiling of the square root, exact for every size_t.
std::size_t ceil_sqrt(std::size_t n);

// Scores every bursty segment (some subwindow above expectation), sorted by
// weight descending then text ascending. No truncation.
std::vector<BurstScore> score_segments(const SegmentIndex& index, int workers = 1);

// Top ceil(sqrt(N_t)) of score_segments. Throws NoBurstError when empty.
std::vector<BurstScore> extract_bursty(const SegmentIndex& index, int workers = 1);

}  // namespace ceed
