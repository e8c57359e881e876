#include "ceed/events.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ceed/parallel.hpp"
#include "ceed/text.hpp"

namespace ceed {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

double subwindow_weight(const SegmentStats& stats, int m) {
  if (stats.f_window == 0) return 0.0;
  return static_cast<double>(stats.f_sub[static_cast<std::size_t>(m)]) /
         static_cast<double>(stats.f_window);
}

TemporalProfile window_profile(const SegmentIndex& index, SegmentId segment,
                               const DocumentFrequency& df) {
  const auto& st = index.at(segment);
  const int M = index.subwindows();
  TemporalProfile p;
  p.weight.resize(static_cast<std::size_t>(M));
  p.docs.resize(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    p.weight[static_cast<std::size_t>(m)] = subwindow_weight(st, m);
    const auto tweets = st.tweets_in(m);
    if (!tweets.empty()) p.docs[static_cast<std::size_t>(m)] = weigh(count_terms(index, tweets), df);
  }
  return p;
}

double profile_similarity(const TemporalProfile& a, const TemporalProfile& b) {
  const std::size_t M = std::min(a.weight.size(), b.weight.size());
  double sum = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    const double w = a.weight[m] * b.weight[m];
    if (w == 0.0) continue;
    sum += w * cosine(a.docs[m], b.docs[m]);
  }
  return std::clamp(sum, 0.0, 1.0);
}

double profile_overlap(const TemporalProfile& a, const TemporalProfile& b) {
  const std::size_t M = std::min(a.weight.size(), b.weight.size());
  double sum = 0.0;
  for (std::size_t m = 0; m < M; ++m) sum += a.weight[m] * b.weight[m];
  return std::clamp(sum, 0.0, 1.0);
}

double segment_similarity(const SegmentIndex& index, SegmentId a, SegmentId b,
                          const DocumentFrequency& df) {
  return profile_similarity(window_profile(index, a, df), window_profile(index, b, df));
}

SimilarityMatrix::SimilarityMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), values_(labels_.size() * labels_.size(), 0.0) {
  for (std::size_t i = 0; i < labels_.size(); ++i) values_[i * labels_.size() + i] = 1.0;
}

void SimilarityMatrix::set(std::size_t i, std::size_t j, double v) {
  values_[i * labels_.size() + j] = v;
  values_[j * labels_.size() + i] = v;
}

SimilarityMatrix similarity_matrix(std::span<const TemporalProfile> profiles,
                                   std::vector<std::string> labels, int workers) {
  const std::size_t n = profiles.size();
  if (labels.size() != n) throw std::invalid_argument("labels and profiles differ in size");
  std::vector<std::vector<double>> rows(n);
  parallel_for(n, workers, [&](std::size_t i) {
    rows[i].resize(n - i - 1);
    for (std::size_t j = i + 1; j < n; ++j) {
      rows[i][j - i - 1] = profile_similarity(profiles[i], profiles[j]);
    }
  });
  SimilarityMatrix m(std::move(labels));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, rows[i][j - i - 1]);
  }
  return m;
}

std::vector<std::vector<std::size_t>> nearest_neighbors(const SimilarityMatrix& m, int k) {
  const std::size_t n = m.size();
  const auto& labels = m.labels();
  std::vector<std::vector<std::size_t>> knn(n);
  if (k < 1) return knn;
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < n; ++i) {
    cand.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && m.at(i, j) > 0.0) cand.push_back(j);
    }
    const std::size_t take = std::min(cand.size(), static_cast<std::size_t>(k));
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(take), cand.end(),
                      [&](std::size_t a, std::size_t b) {
                        const double sa = m.at(i, a), sb = m.at(i, b);
                        return sa != sb ? sa > sb : labels[a] < labels[b];
                      });
    knn[i].assign(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return knn;
}

JarvisPatrickResult jarvis_patrick(const SimilarityMatrix& m, int k) {
  JarvisPatrickResult result;
  const std::size_t n = m.size();
  if (n < 2) {
    for (std::size_t i = 0; i < n; ++i) result.discarded.push_back(i);
    return result;
  }
  const auto& labels = m.labels();
  const auto knn = nearest_neighbors(m, k);
  auto has = [&](std::size_t from, std::size_t to) {
    return std::find(knn[from].begin(), knn[from].end(), to) != knn[from].end();
  };
  DisjointSets sets(n);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : knn[i]) {
      if (i < j && has(j, i)) {
        edges.emplace_back(i, j);
        sets.unite(i, j);
      }
    }
  }
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[sets.find(i)].push_back(i);
  auto by_label = [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; };
  for (auto& g : groups) {
    if (g.empty()) continue;
    std::sort(g.begin(), g.end(), by_label);
    if (g.size() == 1) {
      result.discarded.push_back(g.front());
    } else {
      result.clusters.push_back(std::move(g));
    }
  }
  std::sort(result.discarded.begin(), result.discarded.end(), by_label);
  std::sort(result.clusters.begin(), result.clusters.end(),
            [&](const auto& a, const auto& b) { return labels[a.front()] < labels[b.front()]; });

  std::vector<std::size_t> cluster_of(n, 0);
  for (std::size_t c = 0; c < result.clusters.size(); ++c) {
    for (std::size_t node : result.clusters[c]) cluster_of[node] = c;
  }
  result.edges.resize(result.clusters.size());
  for (auto [a, b] : edges) {
    if (labels[b] < labels[a]) std::swap(a, b);
    result.edges[cluster_of[a]].emplace_back(a, b);
  }
  for (auto& list : result.edges) {
    std::sort(list.begin(), list.end(), [&](const auto& x, const auto& y) {
      return labels[x.first] != labels[y.first] ? labels[x.first] < labels[y.first]
                                                : labels[x.second] < labels[y.second];
    });
  }
  return result;
}

double newsworthiness(std::string_view segment, const TitlesLexicon& lexicon) {
  std::vector<std::string> words;
  std::size_t start = 0;
  while (start <= segment.size()) {
    const auto sp = segment.find(' ', start);
    const auto end = sp == std::string_view::npos ? segment.size() : sp;
    if (end > start) words.emplace_back(segment.substr(start, end - start));
    if (sp == std::string_view::npos) break;
    start = sp + 1;
  }
  if (words.size() <= 1) return std::exp(lexicon.anchor_prob(segment));
  double best_q = 0.0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string sub;
    for (std::size_t j = i; j < words.size(); ++j) {
      if (j > i) sub += ' ';
      sub += words[j];
      best_q = std::max(best_q, lexicon.anchor_prob(sub));
    }
  }
  return std::exp(best_q) - 1.0;
}

double eventworthiness(std::span<const double> news, std::span<const double> edge_sims) {
  if (news.size() < 2) throw std::invalid_argument("event needs at least two segments");
  const double n = static_cast<double>(news.size());
  double news_sum = 0.0;
  for (double v : news) news_sum += v;
  double sim_sum = 0.0;
  for (double v : edge_sims) sim_sum += v;
  return (news_sum / n) * (sim_sum / n);
}

std::vector<EventCluster> filter_events(std::vector<EventCluster> candidates, double tau) {
  double mu_max = 0.0;
  for (const auto& e : candidates) mu_max = std::max(mu_max, e.worthiness);
  std::vector<EventCluster> kept;
  for (auto& e : candidates) {
    if (e.worthiness > 0.0 && mu_max / e.worthiness <= tau) kept.push_back(std::move(e));
  }
  return kept;
}

EventDetection detect_events(const SegmentIndex& index, const TitlesLexicon& lexicon,
                             const DocumentFrequency& df, std::vector<BurstScore> bursty,
                             int k, double tau, int workers) {
  EventDetection out;
  out.bursty = std::move(bursty);
  const std::size_t n = out.bursty.size();
  out.profiles.resize(n);
  parallel_for(n, workers, [&](std::size_t i) {
    out.profiles[i] = window_profile(index, out.bursty[i].segment, df);
  });
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& b : out.bursty) labels.push_back(b.text);
  out.similarity = similarity_matrix(out.profiles, std::move(labels), workers);
  out.clustering = jarvis_patrick(out.similarity, k);

  for (std::size_t c = 0; c < out.clustering.clusters.size(); ++c) {
    auto nodes = out.clustering.clusters[c];
    // Bursty order is weight descending, text ascending.
    std::sort(nodes.begin(), nodes.end());
    EventCluster e;
    std::vector<double> news;
    for (std::size_t node : nodes) {
      const SegmentId id = out.bursty[node].segment;
      e.segments.push_back(id);
      news.push_back(newsworthiness(index.at(id).text, lexicon));
      const auto& tw = index.at(id).tweets;
      e.tweets.insert(e.tweets.end(), tw.begin(), tw.end());
    }
    std::sort(e.tweets.begin(), e.tweets.end());
    e.tweets.erase(std::unique(e.tweets.begin(), e.tweets.end()), e.tweets.end());
    std::vector<double> sims;
    for (const auto& [a, b] : out.clustering.edges[c]) {
      const double s = out.similarity.at(a, b);
      e.pair_sims.push_back({out.bursty[a].segment, out.bursty[b].segment, s});
      sims.push_back(s);
    }
    e.worthiness = eventworthiness(news, sims);
    e.label = index.at(e.segments.front()).text;
    out.candidates.push_back(std::move(e));
  }
  std::sort(out.candidates.begin(), out.candidates.end(),
            [](const EventCluster& a, const EventCluster& b) {
              return a.worthiness != b.worthiness ? a.worthiness > b.worthiness
                                                  : a.label < b.label;
            });
  for (std::size_t i = 0; i < out.candidates.size(); ++i) {
    out.candidates[i].id = "C" + std::to_string(i + 1);
  }
  out.events = filter_events(out.candidates, tau);
  for (std::size_t i = 0; i < out.events.size(); ++i) {
    out.events[i].id = "E" + std::to_string(i + 1);
  }
  return out;
}

}  // namespace ceed
