#include "ceed/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <set>
#include <unordered_set>

#include "ceed/error.hpp"
#include "json.hpp"

namespace ceed {

__extension__ using Wide = __int128;
namespace {

using nlohmann::json;

// Days since 1970-01-01 for a proleptic Gregorian date (H. Hinnant).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y += m <= 2;
}

bool is_leap(std::int64_t y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(std::int64_t y, unsigned m) {
  static constexpr std::array<unsigned, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                     31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

bool read_fixed(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  const char* b = s.data() + pos;
  for (std::size_t i = 0; i < len; ++i) {
    if (!text::is_ascii_digit(b[i])) return false;
  }
  return std::from_chars(b, b + len, out).ec == std::errc{};
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = text::to_lower(c);
  return out;
}

bool is_url(std::string_view chunk) {
  const std::string lower = to_lower(chunk);
  return lower.find("://") != std::string::npos || lower.rfind("www.", 0) == 0;
}

std::string id_field(const json& obj, const char* key, bool required) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) throw ParseError(std::string("missing field '") + key + "'");
    return {};
  }
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<std::int64_t>());
  if (it->is_number_unsigned()) return std::to_string(it->get<std::uint64_t>());
  throw ParseError(std::string("field '") + key + "' must be a string");
}

std::uint64_t counter_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return 0;
  if (it->is_number_unsigned()) return it->get<std::uint64_t>();
  if (it->is_number_integer()) {
    const auto v = it->get<std::int64_t>();
    if (v < 0) throw ParseError(std::string("field '") + key + "' is negative");
    return static_cast<std::uint64_t>(v);
  }
  throw ParseError(std::string("field '") + key + "' must be a non-negative integer");
}

}  // namespace

Timestamp parse_timestamp(std::string_view iso) {
  int year, month, day, hour, minute, second;
  const bool shape = iso.size() >= 19 && iso[4] == '-' && iso[7] == '-' &&
                     (iso[10] == 'T' || iso[10] == ' ') && iso[13] == ':' &&
                     iso[16] == ':';
  if (!shape || !read_fixed(iso, 0, 4, year) || !read_fixed(iso, 5, 2, month) ||
      !read_fixed(iso, 8, 2, day) || !read_fixed(iso, 11, 2, hour) ||
      !read_fixed(iso, 14, 2, minute) || !read_fixed(iso, 17, 2, second)) {
    throw std::invalid_argument("bad timestamp '" + std::string(iso) + "'");
  }
  std::string_view rest = iso.substr(19);
  if (!rest.empty() && rest.front() == '.') {
    std::size_t i = 1;
    while (i < rest.size() && text::is_ascii_digit(rest[i])) ++i;
    if (i == 1) throw std::invalid_argument("bad fractional seconds");
    rest.remove_prefix(i);
  }
  if (!(rest.empty() || rest == "Z" || rest == "+00:00" || rest == "+0000")) {
    throw std::invalid_argument("timestamp must be UTC: '" + std::string(iso) + "'");
  }
  if (month < 1 || month > 12 || day < 1 ||
      day > static_cast<int>(days_in_month(year, static_cast<unsigned>(month))) ||
      hour > 23 || minute > 59 || second > 59) {
    throw std::invalid_argument("timestamp out of range '" + std::string(iso) + "'");
  }
  const std::int64_t days =
      days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
  return days * 86400 + hour * 3600 + minute * 60 + second;
}

std::string format_timestamp(Timestamp ts) {
  std::int64_t days = ts / 86400;
  std::int64_t secs = ts % 86400;
  if (secs < 0) {
    secs += 86400;
    --days;
  }
  std::int64_t y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<long long>(y), m, d, static_cast<long long>(secs / 3600),
                static_cast<long long>(secs / 60 % 60), static_cast<long long>(secs % 60));
  return buf;
}

RawTweetRecord parse_tweet(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ParseError("record is not a JSON object");

  RawTweetRecord rec;
  rec.id = id_field(obj, "id", true);
  if (rec.id.empty()) throw ParseError("empty id");
  auto text_it = obj.find("text");
  if (text_it == obj.end() || !text_it->is_string()) {
    throw ParseError("missing or non-string field 'text'");
  }
  rec.text = text_it->get<std::string>();
  rec.user_id = id_field(obj, "user_id", true);
  if (rec.user_id.empty()) throw ParseError("empty user_id");
  if (auto it = obj.find("user_name"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError("field 'user_name' must be a string");
    rec.user_name = it->get<std::string>();
  }
  rec.followers_count = counter_field(obj, "followers_count");
  rec.retweet_count = counter_field(obj, "retweet_count");

  auto ts_it = obj.find("created_at");
  if (ts_it == obj.end() || !ts_it->is_string()) {
    throw ParseError("missing or non-string field 'created_at'");
  }
  try {
    rec.created_at = parse_timestamp(ts_it->get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  if (auto it = obj.find("is_retweet"); it != obj.end() && !it->is_null()) {
    if (!it->is_boolean()) throw ParseError("field 'is_retweet' must be a boolean");
    rec.is_retweet = it->get<bool>();
  }
  std::string rt = id_field(obj, "retweet_of", false);
  if (!rt.empty()) rec.retweet_of = std::move(rt);
  return rec;
}

std::vector<RawTweetRecord> read_records(std::istream& in, ReadStats& stats) {
  constexpr std::size_t kMaxDiagnostics = 20;
  std::vector<RawTweetRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  auto skip = [&](const std::string& why) {
    ++stats.skipped;
    if (stats.diagnostics.size() < kMaxDiagnostics) {
      stats.diagnostics.push_back("line " + std::to_string(lineno) + ": " + why);
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++stats.lines;
    try {
      RawTweetRecord rec = parse_tweet(line);
      if (!seen.insert(rec.id).second) {
        skip("duplicate id '" + rec.id + "'");
        continue;
      }
      records.push_back(std::move(rec));
    } catch (const ParseError& e) {
      skip(e.what());
    }
  }
  return records;
}

std::vector<text::Token> normalize_text(std::string_view raw, const MentionMap& mentions) {
  std::vector<text::Token> tokens;
  auto is_handle_char = [](char c) { return text::is_ascii_alnum(c) || c == '_'; };
  std::size_t pos = 0;
  while (pos < raw.size()) {
    while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
    std::size_t end = pos;
    while (end < raw.size() && !std::isspace(static_cast<unsigned char>(raw[end]))) ++end;
    const std::string_view chunk = raw.substr(pos, end - pos);
    pos = end;
    if (chunk.empty() || is_url(chunk)) continue;

    const std::string ascii = text::strip_non_ascii(chunk);
    const std::size_t n = ascii.size();
    std::size_t i = 0;
    while (i < n) {
      const char c = ascii[i];
      if ((c == '#' || c == '@') && i + 1 < n && is_handle_char(ascii[i + 1])) {
        std::size_t j = i + 1;
        while (j < n && is_handle_char(ascii[j])) ++j;
        const std::string_view body(ascii.data() + i + 1, j - i - 1);
        if (c == '#') {
          for (auto& part : text::split_hashtag(body)) {
            tokens.push_back({std::move(part), true});
          }
        } else if (auto it = mentions.find(to_lower(body)); it != mentions.end()) {
          for (auto& w : text::split_words(text::strip_non_ascii(it->second))) {
            tokens.push_back({std::move(w), false});
          }
        }
        i = j;
      } else if (text::is_ascii_alnum(c) || c == '\'') {
        std::string word;
        while (i < n && (text::is_ascii_alnum(ascii[i]) || ascii[i] == '\'')) {
          if (ascii[i] != '\'') word.push_back(text::to_lower(ascii[i]));
          ++i;
        }
        if (!word.empty()) tokens.push_back({std::move(word), false});
      } else {
        ++i;
      }
    }
  }
  return tokens;
}

void WindowConfig::validate() const {
  if (!(window_start < window_end)) {
    throw ConfigError("window start must precede window end");
  }
  if (subwindows < 1) throw ConfigError("subwindow count must be >= 1");
  if (hashtag_weight < 1) throw ConfigError("hashtag weight must be >= 1");
}

int WindowConfig::subwindow_of(Timestamp ts) const {
  const Wide offset = ts - window_start;
  const Wide span = window_end - window_start;
  const auto idx = static_cast<int>(offset * subwindows / span);
  return std::clamp(idx, 0, subwindows - 1);
}

std::optional<UserId> Corpus::find_user(std::string_view user_id) const {
  auto it = user_index_.find(std::string(user_id));
  if (it == user_index_.end()) return std::nullopt;
  return it->second;
}

Corpus build_corpus(std::span<const RawTweetRecord> records, const WindowConfig& cfg) {
  cfg.validate();
  Corpus corpus;
  corpus.window_ = cfg;
  corpus.counts_.records = records.size();

  // Users are interned in sorted order.
  std::set<std::string> user_set;
  for (const auto& r : records) user_set.insert(r.user_id);
  corpus.user_ids_.assign(user_set.begin(), user_set.end());
  corpus.followers_.assign(corpus.user_ids_.size(), 0);
  for (UserId u = 0; u < corpus.user_ids_.size(); ++u) {
    corpus.user_index_.emplace(corpus.user_ids_[u], u);
  }

  MentionMap mentions;
  for (const auto& r : records) {
    const UserId u = corpus.user_index_.at(r.user_id);
    corpus.followers_[u] = std::max(corpus.followers_[u], r.followers_count);
    if (r.user_name && !r.user_name->empty()) {
      auto [it, inserted] = mentions.emplace(to_lower(r.user_id), *r.user_name);
      if (!inserted && *r.user_name < it->second) it->second = *r.user_name;
    }
  }

  std::vector<const RawTweetRecord*> originals;
  std::vector<const RawTweetRecord*> retweets;
  for (const auto& r : records) {
    if (!cfg.contains(r.created_at)) {
      ++corpus.counts_.out_of_window;
    } else if (r.is_retweet) {
      retweets.push_back(&r);
    } else {
      originals.push_back(&r);
    }
  }
  std::sort(originals.begin(), originals.end(), [](const auto* a, const auto* b) {
    return a->created_at != b->created_at ? a->created_at < b->created_at : a->id < b->id;
  });

  corpus.tweets_.reserve(originals.size());
  std::unordered_map<std::string, std::size_t> by_id;
  for (const auto* r : originals) {
    Tweet t;
    t.id = r->id;
    t.tokens = normalize_text(r->text, mentions);
    t.user = corpus.user_index_.at(r->user_id);
    t.retweet_count = r->retweet_count;
    t.created_at = r->created_at;
    t.subwindow = cfg.subwindow_of(r->created_at);
    by_id.emplace(t.id, corpus.tweets_.size());
    corpus.tweets_.push_back(std::move(t));
  }

  corpus.counts_.retweets = retweets.size();
  for (const auto* r : retweets) {
    auto it = r->retweet_of ? by_id.find(*r->retweet_of) : by_id.end();
    if (it == by_id.end()) {
      ++corpus.counts_.orphan_retweets;
      continue;
    }
    Tweet& original = corpus.tweets_[it->second];
    ++original.retweet_count;
    const UserId u = corpus.user_index_.at(r->user_id);
    if (u != original.user) original.retweeters.push_back(u);
  }
  for (auto& t : corpus.tweets_) {
    std::sort(t.retweeters.begin(), t.retweeters.end());
    t.retweeters.erase(std::unique(t.retweeters.begin(), t.retweeters.end()),
                       t.retweeters.end());
  }

  corpus.counts_.kept = corpus.tweets_.size();
  if (corpus.tweets_.empty()) throw EmptyWindowError();
  corpus.per_subwindow_.assign(static_cast<std::size_t>(cfg.subwindows), 0);
  for (const auto& t : corpus.tweets_) ++corpus.per_subwindow_[static_cast<std::size_t>(t.subwindow)];
  return corpus;
}

std::optional<std::pair<Timestamp, Timestamp>> data_span(
    std::span<const RawTweetRecord> records) {
  if (records.empty()) return std::nullopt;
  Timestamp lo = records.front().created_at;
  Timestamp hi = lo;
  for (const auto& r : records) {
    lo = std::min(lo, r.created_at);
    hi = std::max(hi, r.created_at);
  }
  return std::make_pair(lo, hi + 1);
}

}  // namespace ceed
