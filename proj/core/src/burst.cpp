#include "ceed/burst.hpp"

#include <algorithm>
#include <cmath>

#include "ceed/error.hpp"
#include "ceed/parallel.hpp"

namespace ceed {

std::optional<Expectation> expected_and_sigma(const SegmentIndex& index, SegmentId segment,
                                              int m) {
  const double n_m = static_cast<double>(index.weighted_subwindow(m));
  if (n_m <= 0.0) return std::nullopt;
  const double p = static_cast<double>(index.at(segment).f_window) /
                   static_cast<double>(index.weighted_total());
  Expectation e;
  e.expected = n_m * p;
  if (p >= 1.0) {
    e.saturated = true;
    return e;
  }
  e.sigma = std::sqrt(n_m * p * (1.0 - p));
  return e;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double z = std::exp(x);
  return z / (1.0 + z);
}

double burst_probability(double frequency, double expected, double sigma) {
  return sigmoid(10.0 * (frequency - (expected + sigma)) / sigma);
}

double segment_weight(double probability, double users, double retweets, double followers) {
  return probability * std::log1p(users) * std::log1p(retweets) *
         std::log1p(std::log1p(followers));
}

std::size_t ceil_sqrt(std::size_t n) {
  if (n == 0) return 0;
  // Floor root via division, then round up.
  auto s = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (s > n / s) --s;
  while (s + 1 <= n / (s + 1)) ++s;
  return s * s == n ? s : s + 1;
}

std::vector<BurstScore> score_segments(const SegmentIndex& index, int workers) {
  const std::size_t n = index.size();
  std::vector<std::optional<BurstScore>> slots(n);
  parallel_for(n, workers, [&](std::size_t i) {
    const auto id = static_cast<SegmentId>(i);
    const auto& st = index.at(id);
    double best = -1.0;
    int best_m = -1;
    for (int m = 0; m < index.subwindows(); ++m) {
      const auto e = expected_and_sigma(index, id, m);
      if (!e || e->saturated) continue;
      const double f = static_cast<double>(st.f_sub[static_cast<std::size_t>(m)]);
      if (!(f > e->expected)) continue;
      const double p = burst_probability(f, e->expected, e->sigma);
      if (p > best) {
        best = p;
        best_m = m;
      }
    }
    if (best_m < 0) return;
    BurstScore s;
    s.segment = id;
    s.text = st.text;
    s.bursty_subwindow = best_m;
    s.probability = best;
    s.weight = segment_weight(best, static_cast<double>(st.users.size()),
                              static_cast<double>(st.rc_sum), static_cast<double>(st.fc_sum));
    slots[i] = std::move(s);
  });
  std::vector<BurstScore> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  std::sort(out.begin(), out.end(), [](const BurstScore& a, const BurstScore& b) {
    return a.weight != b.weight ? a.weight > b.weight : a.text < b.text;
  });
  return out;
}

std::vector<BurstScore> extract_bursty(const SegmentIndex& index, int workers) {
  auto scores = score_segments(index, workers);
  if (scores.empty()) throw NoBurstError();
  const std::size_t keep = ceil_sqrt(index.total_tweets());
  if (scores.size() > keep) scores.resize(keep);
  return scores;
}

}  // namespace ceed
