#include "ceed/segment.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "ceed/error.hpp"
#include "ceed/parallel.hpp"

namespace ceed {
namespace {

constexpr const char* kEnglishStopwords[] = {
    "a",     "about", "after", "all",   "also",  "am",    "an",    "and",
    "any",   "are",   "as",    "at",    "be",    "been",  "being", "but",
    "by",    "can",   "could", "did",   "do",    "does",  "for",   "from",
    "had",   "has",   "have",  "he",    "her",   "here",  "him",   "his",
    "how",   "i",     "if",    "in",    "into",  "is",    "it",    "its",
    "just",  "me",    "my",    "of",    "on",    "or",    "our",   "out",
    "rt",    "she",   "so",    "than",  "that",  "the",   "their", "them",
    "then",  "there", "these", "they",  "this",  "those", "to",    "too",
    "us",    "via",   "was",   "we",    "were",  "what",  "when",  "where",
    "which", "who",   "will",  "with",  "would", "you",   "your",  "amp",
};

}  // namespace

StopwordSet::StopwordSet(std::vector<std::string> words) {
  for (auto& w : words) {
    if (!w.empty()) words_.insert(std::move(w));
  }
}

StopwordSet StopwordSet::english() {
  return StopwordSet(std::vector<std::string>(std::begin(kEnglishStopwords),
                                              std::end(kEnglishStopwords)));
}

StopwordSet StopwordSet::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stopword file " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    for (auto& w : text::split_words(line)) words.push_back(std::move(w));
  }
  return StopwordSet(std::move(words));
}

std::vector<Segment> segment_tweet(std::span<const text::Token> tokens,
                                   const TitlesLexicon& lexicon,
                                   const StopwordSet& stopwords) {
  std::vector<Segment> out;
  const std::size_t n = tokens.size();
  const auto max_len = static_cast<std::size_t>(std::max(1, lexicon.max_len()));
  std::vector<std::string> prefixes;
  std::size_t i = 0;
  while (i < n) {
    const std::size_t limit = std::min(max_len, n - i);
    prefixes.clear();
    std::string phrase = tokens[i].text;
    prefixes.push_back(phrase);
    for (std::size_t len = 2; len <= limit; ++len) {
      phrase += ' ';
      phrase += tokens[i + len - 1].text;
      prefixes.push_back(phrase);
    }
    std::size_t take = 1;
    for (std::size_t len = limit; len >= 2; --len) {
      if (lexicon.lookup(prefixes[len - 1])) {
        take = len;
        break;
      }
    }
    bool all_stop = true;
    bool hashtag = false;
    for (std::size_t j = i; j < i + take; ++j) {
      all_stop = all_stop && stopwords.contains(tokens[j].text);
      hashtag = hashtag || tokens[j].from_hashtag;
    }
    if (!all_stop) {
      out.push_back(Segment{std::move(prefixes[take - 1]), hashtag, i, take});
    }
    i += take;
  }
  return out;
}

std::optional<SegmentId> SegmentIndex::find(std::string_view text) const {
  auto it = by_text_.find(std::string(text));
  if (it == by_text_.end()) return std::nullopt;
  return it->second;
}

std::span<const Occurrence> SegmentIndex::segments_of(TweetIndex t) const {
  return std::span<const Occurrence>(seg_flat_)
      .subspan(seg_offsets_[t], seg_offsets_[t + 1] - seg_offsets_[t]);
}

std::span<const SegmentId> SegmentIndex::terms_of(TweetIndex t) const {
  return std::span<const SegmentId>(term_flat_)
      .subspan(term_offsets_[t], term_offsets_[t + 1] - term_offsets_[t]);
}

SegmentIndex build_index(const Corpus& corpus, const TitlesLexicon& lexicon,
                         const StopwordSet& stopwords, int hashtag_weight, int workers) {
  if (corpus.total_tweets() == 0) throw EmptyWindowError();
  if (hashtag_weight < 1) throw ConfigError("hashtag weight must be >= 1");

  const auto tweets = corpus.tweets();
  const std::size_t n = tweets.size();
  std::vector<std::vector<Segment>> segmented(n);
  parallel_for(n, workers, [&](std::size_t t) {
    segmented[t] = segment_tweet(tweets[t].tokens, lexicon, stopwords);
  });

  SegmentIndex index;
  index.corpus_ = &corpus;
  index.hashtag_weight_ = hashtag_weight;

  std::vector<std::string> texts;
  for (const auto& segs : segmented) {
    for (const auto& s : segs) texts.push_back(s.text);
  }
  std::sort(texts.begin(), texts.end());
  texts.erase(std::unique(texts.begin(), texts.end()), texts.end());

  const int M = corpus.subwindows();
  index.stats_.resize(texts.size());
  for (SegmentId id = 0; id < texts.size(); ++id) {
    auto& st = index.stats_[id];
    st.text = texts[id];
    st.f_sub.assign(static_cast<std::size_t>(M), 0);
    index.by_text_.emplace(texts[id], id);
  }

  const auto H = static_cast<std::uint32_t>(hashtag_weight);
  index.seg_offsets_.reserve(n + 1);
  index.term_offsets_.reserve(n + 1);
  index.seg_offsets_.push_back(0);
  index.term_offsets_.push_back(0);
  index.tweet_weight_.resize(n);
  index.weighted_sub_.assign(static_cast<std::size_t>(M), 0);
  std::map<SegmentId, std::uint32_t> local;
  for (std::size_t t = 0; t < n; ++t) {
    local.clear();
    std::vector<SegmentId> order;
    for (const auto& s : segmented[t]) {
      const SegmentId id = index.by_text_.at(s.text);
      index.term_flat_.push_back(id);
      auto [it, inserted] = local.emplace(id, 1u);
      if (inserted) order.push_back(id);
      if (s.hashtag_origin) {
        it->second = H;
        index.stats_[id].hashtag_origin = true;
      }
    }
    std::uint32_t tweet_weight = 1;
    for (SegmentId id : order) {
      const std::uint32_t w = local[id];
      tweet_weight = std::max(tweet_weight, w);
      index.seg_flat_.push_back({id, w});
      auto& st = index.stats_[id];
      st.f_window += w;
      st.f_sub[static_cast<std::size_t>(tweets[t].subwindow)] += w;
      st.tweets.push_back(static_cast<TweetIndex>(t));
      st.rc_sum += tweets[t].retweet_count;
      st.users.push_back(tweets[t].user);
      st.users.insert(st.users.end(), tweets[t].retweeters.begin(), tweets[t].retweeters.end());
    }
    index.tweet_weight_[t] = tweet_weight;
    index.weighted_total_ += tweet_weight;
    index.weighted_sub_[static_cast<std::size_t>(tweets[t].subwindow)] += tweet_weight;
    index.seg_offsets_.push_back(index.seg_flat_.size());
    index.term_offsets_.push_back(index.term_flat_.size());
  }

  for (auto& st : index.stats_) {
    std::sort(st.users.begin(), st.users.end());
    st.users.erase(std::unique(st.users.begin(), st.users.end()), st.users.end());
    for (UserId u : st.users) st.fc_sum += corpus.followers(u);
    st.sub_offsets.assign(static_cast<std::size_t>(M) + 1, 0);
    for (TweetIndex t : st.tweets) {
      ++st.sub_offsets[static_cast<std::size_t>(tweets[t].subwindow) + 1];
    }
    for (std::size_t m = 0; m < static_cast<std::size_t>(M); ++m) {
      st.sub_offsets[m + 1] += st.sub_offsets[m];
    }
  }
  return index;
}

}  // namespace ceed
