#include "ceed/burst.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "builders.hpp"
#include "ceed/error.hpp"

namespace ceed {
namespace {

using testing::kDay;
using testing::kT0;
using testing::rec;
using testing::ten_days;

double naive_sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

TEST(Sigmoid, PointValues) {
  EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
  EXPECT_NEAR(sigmoid(10.0), 0.9999546021312976, 1e-15);
  EXPECT_NEAR(sigmoid(-10.0), 4.5397868702434395e-05, 1e-18);
  EXPECT_EQ(sigmoid(-1000.0), 0.0);
  EXPECT_EQ(sigmoid(1000.0), 1.0);
  for (double x = -30; x <= 30; x += 0.37) EXPECT_NEAR(sigmoid(x), naive_sigmoid(x), 1e-15);
}

TEST(BurstProbability, CentredOnOneSigmaAboveExpectation) {
  const double E = 50.0, s = 5.0;
  EXPECT_NEAR(burst_probability(E + s, E, s), 0.5, 1e-12);
  EXPECT_NEAR(burst_probability(E + 2 * s, E, s), naive_sigmoid(10.0), 1e-15);
  EXPECT_NEAR(burst_probability(E, E, s), naive_sigmoid(-10.0), 1e-18);
  EXPECT_LT(burst_probability(E + 0.5 * s, E, s), burst_probability(E + 1.5 * s, E, s));
}

TEST(SegmentWeight, Formula) {
  const double w = segment_weight(0.5, 3, 7, 100);
  EXPECT_NEAR(w, 0.5 * std::log(4.0) * std::log(8.0) * std::log(1 + std::log(101.0)), 1e-14);
  EXPECT_EQ(segment_weight(1.0, 0, 5, 5), 0.0);
  EXPECT_EQ(segment_weight(1.0, 5, 0, 5), 0.0);
  EXPECT_EQ(segment_weight(1.0, 5, 5, 0), 0.0);
  const double e1 = std::exp(1.0) - 1.0;
  EXPECT_NEAR(segment_weight(1.0, e1, e1, std::exp(e1) - 1.0), 1.0, 1e-12);
}

TEST(SegmentWeight, NeverNegative) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> p(0.0, 1.0);
  std::uniform_int_distribution<int> n(0, 1000000);
  for (int i = 0; i < 2000; ++i) EXPECT_GE(segment_weight(p(rng), n(rng), n(rng), n(rng)), 0.0);
}

TEST(CeilSqrt, ExactForAllSizes) {
  EXPECT_EQ(ceil_sqrt(0), 0u);
  EXPECT_EQ(ceil_sqrt(1), 1u);
  EXPECT_EQ(ceil_sqrt(2), 2u);
  EXPECT_EQ(ceil_sqrt(9), 3u);
  EXPECT_EQ(ceil_sqrt(10), 4u);
  EXPECT_EQ(ceil_sqrt(5000), 71u);
  const std::size_t big = std::numeric_limits<std::size_t>::max();
  EXPECT_EQ(ceil_sqrt(big), std::size_t{1} << 32);
  const std::size_t sq = std::size_t{4294967295} * 4294967295u;
  EXPECT_EQ(ceil_sqrt(sq), 4294967295u);
  EXPECT_EQ(ceil_sqrt(sq + 1), 4294967296u);
}

// 100 tweets, ten per day. "common" appears in half of them, "spike" only
// on day 2.
std::vector<RawTweetRecord> spike_records() {
  std::vector<RawTweetRecord> records;
  for (int d = 0; d < 10; ++d) {
    for (int i = 0; i < 10; ++i) {
      std::string text = "filler" + std::to_string(d * 10 + i);
      if (i % 2 == 0) text += " common";
      if (d == 2 && i < 8) text += " spike";
      records.push_back(rec("t" + std::to_string(d * 10 + i), text, "u" + std::to_string(i),
                            kT0 + d * kDay + i * 60, 3, 50));
    }
  }
  return records;
}

TEST(Expectation, BinomialMoments) {
  const auto records = spike_records();
  const auto corpus = build_corpus(records, ten_days());
  const auto index = build_index(corpus, TitlesLexicon{}, StopwordSet{}, 1);
  const auto e = expected_and_sigma(index, *index.find("common"), 4);
  ASSERT_TRUE(e.has_value());
  EXPECT_NEAR(e->expected, 5.0, 1e-12);
  EXPECT_NEAR(e->sigma, std::sqrt(2.5), 1e-12);
  EXPECT_FALSE(e->saturated);
}

TEST(Expectation, SaturatedAndEmptySubwindows) {
  std::vector<RawTweetRecord> records = {rec("a", "all", "u", kT0), rec("b", "all", "v", kT0 + 1)};
  const auto corpus = build_corpus(records, ten_days(2));
  const auto index = build_index(corpus, TitlesLexicon{}, StopwordSet{}, 1);
  const auto e = expected_and_sigma(index, 0, 0);
  ASSERT_TRUE(e.has_value());
  EXPECT_TRUE(e->saturated);
  EXPECT_FALSE(expected_and_sigma(index, 0, 1).has_value());
  EXPECT_TRUE(score_segments(index).empty());
  EXPECT_THROW(extract_bursty(index), NoBurstError);
}

TEST(ScoreSegments, SpikeIsFoundInItsSubwindow) {
  const auto records = spike_records();
  const auto corpus = build_corpus(records, ten_days());
  const auto index = build_index(corpus, TitlesLexicon{}, StopwordSet{}, 1);
  const auto scores = score_segments(index);
  ASSERT_FALSE(scores.empty());
  EXPECT_EQ(scores.front().text, "spike");
  EXPECT_EQ(scores.front().bursty_subwindow, 2);
  // f = 8, n = 10, p = 0.08: E = 0.8, sigma = sqrt(0.736).
  const double sigma = std::sqrt(10 * 0.08 * 0.92);
  const double pb = naive_sigmoid(10 * (8 - (0.8 + sigma)) / sigma);
  EXPECT_NEAR(scores.front().probability, pb, 1e-12);
  EXPECT_NEAR(scores.front().weight,
              pb * std::log1p(8.0) * std::log1p(24.0) * std::log1p(std::log1p(400.0)), 1e-9);
  for (std::size_t i = 1; i < scores.size(); ++i) {
    EXPECT_TRUE(scores[i - 1].weight > scores[i].weight ||
                (scores[i - 1].weight == scores[i].weight && scores[i - 1].text < scores[i].text));
  }
  const auto top = extract_bursty(index);
  EXPECT_EQ(top.size(), std::min<std::size_t>(scores.size(), 10));
  const auto parallel = score_segments(index, 4);
  ASSERT_EQ(parallel.size(), scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    EXPECT_EQ(parallel[i].text, scores[i].text);
    EXPECT_EQ(parallel[i].weight, scores[i].weight);
  }
}

}  // namespace
}  // namespace ceed
