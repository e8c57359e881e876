#include "ceed/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_set>

#include "json.hpp"

#include "ceed/text.hpp"

namespace ceed::synth {
namespace {

constexpr Timestamp kDay = 86400;
constexpr Timestamp kHour = 3600;
constexpr std::size_t kFillerWords = 1500;
constexpr std::size_t kUsers = 3000;
constexpr std::size_t kNames = 400;

const std::vector<std::string> kBridge = {"bridge collapse"};
const std::vector<std::string> kCoreA = {"rescue teams", "death toll", "city council"};
const std::vector<std::string> kEarlyA = {"tremor", "siren", "smoke"};
// Only in quiet tweets (never retweeted).
const std::vector<std::string> kEarlySupportA = {"ashfall", "rumble"};
const std::vector<std::string> kCoreSupportA = {"volunteers", "vigil"};
const std::vector<std::string> kCoreB = {"election results", "vote count", "polling booth",
                                         "exit poll", "ballot box"};
const std::vector<std::string> kCoreC = {"cup final", "penalty shootout", "golden boot",
                                         "extra time", "match winner"};
const std::vector<std::string> kStopwords = {"the", "to", "of", "and", "in", "is",
                                             "on", "for", "this", "at", "rt", "amp"};

using Rng = std::mt19937_64;

bool chance(Rng& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::vector<std::string> pseudo_words(std::size_t n, std::uint64_t salt,
                                      const std::unordered_set<std::string>& reserved) {
  static const char* kCons = "bdfgklmnprstvz";
  static const char* kVow = "aeiou";
  Rng rng(0x5eedULL ^ salt);
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < n) {
    std::string w;
    const int syllables = 2 + static_cast<int>(pick(rng, 2));
    for (int s = 0; s < syllables; ++s) {
      w += kCons[pick(rng, 14)];
      w += kVow[pick(rng, 5)];
    }
    if (reserved.count(w) || !seen.insert(w).second) continue;
    out.push_back(w);
  }
  return out;
}

std::string camel(const std::string& phrase) {
  std::string out = "#";
  bool up = true;
  for (char c : phrase) {
    if (c == ' ') {
      up = true;
      continue;
    }
    out += up ? static_cast<char>(c - 'a' + 'A') : c;
    up = false;
  }
  return out;
}

struct Vocab {
  std::vector<std::string> filler;
  std::vector<std::string> names;
};

class Composer {
 public:
  Composer(Rng& rng, const Vocab& vocab) : rng_(rng), vocab_(vocab) {}

  // Joins event phrases with shared filler, stopwords and decorations.
  std::string compose(const std::vector<std::string>& phrases, bool allow_hashtag) {
    std::vector<std::string> chunks;
    const std::size_t fillers = 6 + pick(rng_, 5);
    for (std::size_t i = 0; i < fillers; ++i) chunks.push_back(vocab_.filler[pick(rng_, vocab_.filler.size())]);
    const std::size_t stops = 2 + pick(rng_, 3);
    for (std::size_t i = 0; i < stops; ++i) chunks.push_back(kStopwords[pick(rng_, kStopwords.size())]);
    if (chance(rng_, 0.05)) chunks.push_back("@u" + std::to_string(pick(rng_, kUsers)));
    for (const auto& p : phrases) {
      chunks.push_back(allow_hashtag && chance(rng_, 0.08) ? camel(p) : p);
    }
    std::shuffle(chunks.begin(), chunks.end(), rng_);
    if (chance(rng_, 0.1)) chunks.push_back("https://t.co/" + vocab_.filler[pick(rng_, 50)]);
    if (chance(rng_, 0.05)) chunks.push_back("\xF0\x9F\x94\xA5");
    std::string out;
    for (const auto& c : chunks) {
      if (!out.empty()) out += ' ';
      out += c;
    }
    if (chance(rng_, 0.3) && !out.empty()) out[0] = static_cast<char>(std::toupper(out[0]));
    return out;
  }

 private:
  Rng& rng_;
  const Vocab& vocab_;
};

// Each phrase independently with probability p; at least one is forced.
std::vector<std::string> draw(Rng& rng, const std::vector<std::string>& pool, double p,
                              bool force) {
  std::vector<std::string> out;
  for (const auto& s : pool) {
    if (chance(rng, p)) out.push_back(s);
  }
  if (force && out.empty()) out.push_back(pool[pick(rng, pool.size())]);
  return out;
}

void append(std::vector<std::string>& dst, const std::vector<std::string>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace

Dataset planted(const Options& opts) {
  Rng rng(opts.seed);
  Dataset data;
  data.window_start = parse_timestamp("2019-02-14T00:00:00Z");
  data.window_end = data.window_start + 10 * kDay;
  data.subwindows = 10;

  std::unordered_set<std::string> reserved(kStopwords.begin(), kStopwords.end());
  for (const auto* pool : {&kBridge, &kCoreA, &kEarlyA, &kEarlySupportA, &kCoreSupportA,
                           &kCoreB, &kCoreC}) {
    for (const auto& phrase : *pool) {
      for (const auto& w : text::split_words(phrase)) reserved.insert(w);
    }
  }
  Vocab vocab;
  vocab.filler = pseudo_words(kFillerWords, 1, reserved);
  for (const auto& w : vocab.filler) reserved.insert(w);
  vocab.names = pseudo_words(kNames, 2, reserved);

  std::vector<std::uint64_t> followers(kUsers);
  std::lognormal_distribution<double> followers_dist(5.0, 1.5);
  for (auto& f : followers) f = static_cast<std::uint64_t>(followers_dist(rng));

  const double scale = static_cast<double>(opts.originals) / 5000.0;
  const auto n_a = static_cast<std::size_t>(std::llround(1200 * scale));
  const auto n_b = static_cast<std::size_t>(std::llround(900 * scale));
  const auto n_c = static_cast<std::size_t>(std::llround(700 * scale));
  const std::size_t n_bg = opts.originals - std::min(opts.originals, n_a + n_b + n_c);

  const Timestamp a_start = data.window_start + 3 * kDay + kHour;
  const Timestamp a_span = 22 * kHour;  // divisible by 10
  const Timestamp b_start = data.window_start + 3 * kDay + 2 * kHour;
  const Timestamp b_span = 20 * kHour;
  const Timestamp c_start = data.window_start + 7 * kDay + kHour;
  const Timestamp c_span = 22 * kHour;

  PlantedEvent ev_a{"A", a_start, a_start + a_span, {}, {}};
  append(ev_a.segments, kBridge);
  append(ev_a.segments, kCoreA);
  append(ev_a.segments, kEarlyA);
  ev_a.early = kEarlyA;
  append(ev_a.early, kEarlySupportA);
  PlantedEvent ev_b{"B", b_start, b_start + b_span, kCoreB, {}};
  PlantedEvent ev_c{"C", c_start, c_start + c_span, kCoreC, {}};
  data.events = {ev_a, ev_b, ev_c};

  Composer composer(rng, vocab);
  struct Draft {
    RawTweetRecord rec;
    bool quiet = false;
  };
  std::vector<Draft> drafts;
  auto make = [&](Timestamp ts, std::string text, std::uint64_t max_rc, bool quiet) {
    Draft d;
    d.rec.text = std::move(text);
    const std::size_t u = pick(rng, kUsers);
    d.rec.user_id = "u" + std::to_string(u);
    d.rec.user_name = vocab.names[u % kNames] + " " + vocab.names[(u / kNames + 7 * u) % kNames];
    d.rec.followers_count = followers[u];
    d.rec.retweet_count = quiet ? 0 : std::uniform_int_distribution<std::uint64_t>(0, max_rc)(rng);
    d.rec.created_at = ts;
    d.quiet = quiet;
    drafts.push_back(std::move(d));
  };

  for (std::size_t i = 0; i < n_a; ++i) {
    // First and last tweets pin the event span exactly.
    const double u = i == 0 ? 0.0 : i == 1 ? 1.0 : std::uniform_real_distribution<double>(0, 1)(rng);
    const Timestamp ts = a_start + static_cast<Timestamp>(std::floor(u * static_cast<double>(a_span)));
    const bool early = u < 0.3;
    const bool quiet = i > 1 && chance(rng, 0.25);
    std::vector<std::string> phrases = draw(rng, kBridge, 0.6, false);
    if (early) {
      append(phrases, draw(rng, kEarlyA, 0.6, true));
      if (quiet) append(phrases, draw(rng, kEarlySupportA, 0.7, false));
    } else {
      append(phrases, draw(rng, kCoreA, 0.5, true));
      append(phrases, draw(rng, kEarlyA, 0.12, false));
      if (quiet) append(phrases, draw(rng, kCoreSupportA, 0.7, false));
    }
    make(ts, composer.compose(phrases, true), 20, quiet);
  }
  auto planted_block = [&](std::size_t n, Timestamp start, Timestamp span,
                           const std::vector<std::string>& core) {
    for (std::size_t i = 0; i < n; ++i) {
      const Timestamp ts = start + static_cast<Timestamp>(pick(rng, static_cast<std::size_t>(span)));
      make(ts, composer.compose(draw(rng, core, 0.5, true), true), 20, false);
    }
  };
  planted_block(n_b, b_start, b_span, kCoreB);
  planted_block(n_c, c_start, c_span, kCoreC);
  for (std::size_t i = 0; i < n_bg; ++i) {
    const Timestamp ts = data.window_start +
                         static_cast<Timestamp>(pick(rng, static_cast<std::size_t>(10 * kDay)));
    make(ts, composer.compose({}, false), 3, false);
  }

  std::stable_sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
    return a.rec.created_at < b.rec.created_at;
  });
  std::size_t next_id = 0;
  auto new_id = [&](char prefix) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%c%07zu", prefix, ++next_id);
    return std::string(buf);
  };
  std::vector<RawTweetRecord> retweets;
  for (auto& d : drafts) {
    d.rec.id = new_id('t');
    if (d.quiet || !chance(rng, opts.retweet_share)) continue;
    const std::size_t count = 1 + pick(rng, 3);
    for (std::size_t k = 0; k < count; ++k) {
      RawTweetRecord rt;
      const std::size_t u = pick(rng, kUsers);
      rt.user_id = "u" + std::to_string(u);
      rt.user_name = vocab.names[u % kNames] + " " + vocab.names[(u / kNames + 7 * u) % kNames];
      rt.followers_count = followers[u];
      rt.is_retweet = true;
      rt.retweet_of = d.rec.id;
      rt.text = "RT @" + d.rec.user_id + ": " + d.rec.text;
      rt.created_at = std::min(data.window_end - 1,
                               d.rec.created_at + 60 + static_cast<Timestamp>(pick(rng, 7200)));
      retweets.push_back(std::move(rt));
    }
  }
  for (std::size_t i = 0; i < opts.orphan_retweets; ++i) {
    RawTweetRecord rt;
    rt.user_id = "u" + std::to_string(pick(rng, kUsers));
    rt.is_retweet = true;
    rt.retweet_of = "missing" + std::to_string(i);
    rt.text = "RT gone";
    rt.created_at = data.window_start + static_cast<Timestamp>(pick(rng, 10 * kDay));
    retweets.push_back(std::move(rt));
  }
  for (std::size_t i = 0; i < opts.out_of_window; ++i) {
    const Timestamp ts = data.window_start - kDay + static_cast<Timestamp>(pick(rng, kDay));
    make(ts, composer.compose({}, false), 3, false);
    drafts.back().rec.id = new_id('t');
  }
  for (auto& rt : retweets) rt.id = new_id('r');

  for (auto& d : drafts) data.records.push_back(std::move(d.rec));
  for (auto& rt : retweets) data.records.push_back(std::move(rt));
  std::stable_sort(data.records.begin(), data.records.end(),
                   [](const RawTweetRecord& a, const RawTweetRecord& b) {
                     return a.created_at < b.created_at;
                   });

  auto anchor = [&](const std::string& phrase, std::uint64_t links, std::uint64_t occ) {
    data.anchors[phrase] = {links, occ};
  };
  for (const auto* pool : {&kBridge, &kCoreA, &kCoreB, &kCoreC}) {
    for (const auto& p : *pool) data.titles.push_back(p);
  }
  for (const auto& w : kEarlyA) data.titles.push_back(w);
  data.titles.push_back("river bank");
  data.titles.push_back("town hall meeting");
  std::sort(data.titles.begin(), data.titles.end());
  anchor("bridge collapse", 70, 100);
  anchor("rescue teams", 62, 100);
  anchor("death toll", 66, 100);
  anchor("city council", 58, 100);
  anchor("tremor", 30, 100);
  anchor("siren", 25, 100);
  anchor("smoke", 20, 100);
  anchor("election results", 68, 100);
  anchor("vote count", 60, 100);
  anchor("polling booth", 64, 100);
  anchor("exit poll", 70, 100);
  anchor("ballot box", 57, 100);
  anchor("cup final", 72, 100);
  anchor("penalty shootout", 61, 100);
  anchor("golden boot", 65, 100);
  anchor("extra time", 40, 100);
  anchor("match winner", 55, 100);
  anchor("river bank", 10, 100);
  return data;
}

TitlesLexicon lexicon_of(const Dataset& data, int max_len) {
  std::map<std::string, double> q;
  for (const auto& [phrase, c] : data.anchors) {
    if (c.occurrences > 0) {
      q[phrase] = std::min(1.0, static_cast<double>(c.links) / static_cast<double>(c.occurrences));
    }
  }
  std::vector<std::string> titles;
  for (const auto& t : data.titles) {
    if (static_cast<int>(text::count_tokens(t)) <= max_len) titles.push_back(t);
  }
  return TitlesLexicon(std::move(titles), std::move(q), max_len);
}

std::string to_json_line(const RawTweetRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["text"] = r.text;
  j["user_id"] = r.user_id;
  if (r.user_name) j["user_name"] = *r.user_name;
  j["followers_count"] = r.followers_count;
  j["retweet_count"] = r.retweet_count;
  j["created_at"] = format_timestamp(r.created_at);
  j["is_retweet"] = r.is_retweet;
  if (r.retweet_of) j["retweet_of"] = *r.retweet_of;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

void write_jsonl(std::ostream& out, std::span<const RawTweetRecord> records) {
  for (const auto& r : records) out << to_json_line(r) << '\n';
}

void write_titles(std::ostream& out, const Dataset& data) {
  for (const auto& t : data.titles) out << t << '\n';
}

void write_anchors(std::ostream& out, const Dataset& data) {
  for (const auto& [phrase, c] : data.anchors) {
    out << phrase << '\t' << c.links << '\t' << c.occurrences << '\n';
  }
}

}  // namespace ceed::synth
