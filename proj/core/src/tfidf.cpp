#include "ceed/tfidf.hpp"

#include <algorithm>
#include <cmath>

namespace ceed {

TermCounts count_terms(const SegmentIndex& index, std::span<const TweetIndex> tweets) {
  std::vector<SegmentId> all;
  for (TweetIndex t : tweets) {
    const auto terms = index.terms_of(t);
    all.insert(all.end(), terms.begin(), terms.end());
  }
  std::sort(all.begin(), all.end());
  TermCounts out;
  for (SegmentId id : all) {
    if (!out.empty() && out.back().first == id) {
      ++out.back().second;
    } else {
      out.emplace_back(id, 1u);
    }
  }
  return out;
}

DocumentFrequency::DocumentFrequency(std::size_t documents, std::vector<std::uint32_t> df)
    : documents_(documents), df_(std::move(df)) {
  idf_.resize(df_.size());
  const double D = static_cast<double>(documents_);
  for (std::size_t i = 0; i < df_.size(); ++i) {
    idf_[i] = std::log(1.0 + D / (1.0 + static_cast<double>(df_[i])));
  }
}

double DocumentFrequency::idf(SegmentId term) const {
  if (term < idf_.size()) return idf_[term];
  return std::log(1.0 + static_cast<double>(documents_));
}

DocumentFrequency window_document_frequency(const SegmentIndex& index) {
  const std::size_t n = index.size();
  std::vector<std::uint32_t> df(n, 0);
  // stamp[x] remembers the last document that counted term x.
  std::vector<std::size_t> stamp(n, 0);
  std::size_t documents = 0;
  for (SegmentId s = 0; s < n; ++s) {
    const auto& st = index.at(s);
    for (int m = 0; m < index.subwindows(); ++m) {
      const auto tweets = st.tweets_in(m);
      if (tweets.empty()) continue;
      const std::size_t doc = ++documents;
      for (TweetIndex t : tweets) {
        for (SegmentId x : index.terms_of(t)) {
          if (stamp[x] != doc) {
            stamp[x] = doc;
            ++df[x];
          }
        }
      }
    }
  }
  return DocumentFrequency(documents, std::move(df));
}

WeightedDoc weigh(const TermCounts& counts, const DocumentFrequency& df) {
  WeightedDoc doc;
  doc.terms.reserve(counts.size());
  for (const auto& [term, tf] : counts) {
    const double w = static_cast<double>(tf) * df.idf(term);
    doc.terms.emplace_back(term, w);
    doc.norm2 += w * w;
  }
  return doc;
}

double cosine(const WeightedDoc& a, const WeightedDoc& b) {
  if (a.empty() || b.empty() || a.norm2 <= 0.0 || b.norm2 <= 0.0) return 0.0;
  double dot = 0.0;
  auto ia = a.terms.begin();
  auto ib = b.terms.begin();
  while (ia != a.terms.end() && ib != b.terms.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return std::clamp(dot / std::sqrt(a.norm2 * b.norm2), 0.0, 1.0);
}

double tfidf_cosine(const TermCounts& a, const TermCounts& b, const DocumentFrequency& df) {
  return cosine(weigh(a, df), weigh(b, df));
}

}  // namespace ceed
