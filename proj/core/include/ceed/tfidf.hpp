#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ceed/segment.hpp"

namespace ceed {

// Sparse bag of segments, sorted by id, counts > 0.
using TermCounts = std::vector<std::pair<SegmentId, std::uint32_t>>;

// Bag of every segment occurrence (duplicates retained) of the given tweets.
TermCounts count_terms(const SegmentIndex& index, std::span<const TweetIndex> tweets);

// Frozen document-frequency model; idf = ln(1 + D / (1 + df)).
class DocumentFrequency {
 public:
  DocumentFrequency() = default;
  DocumentFrequency(std::size_t documents, std::vector<std::uint32_t> df);

  std::size_t documents() const { return documents_; }
  std::uint32_t df(SegmentId term) const { return term < df_.size() ? df_[term] : 0; }
  double idf(SegmentId term) const;

 private:
  std::size_t documents_ = 0;
  std::vector<std::uint32_t> df_;
  std::vector<double> idf_;
};

// Universe: one document per (segment, subwindow) with at least one tweet,
// holding the concatenated segments of those tweets.
DocumentFrequency window_document_frequency(const SegmentIndex& index);

struct WeightedDoc {
  std::vector<std::pair<SegmentId, double>> terms;  // tf * idf, sorted by id
  double norm2 = 0.0;
  bool empty() const { return terms.empty(); }
};

WeightedDoc weigh(const TermCounts& counts, const DocumentFrequency& df);
// Cosine in [0,1]; 0 when either side is empty.
double cosine(const WeightedDoc& a, const WeightedDoc& b);
double tfidf_cosine(const TermCounts& a, const TermCounts& b, const DocumentFrequency& df);

}  // namespace ceed
