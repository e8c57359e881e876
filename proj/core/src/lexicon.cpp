#include "ceed/lexicon.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "ceed/error.hpp"
#include "ceed/text.hpp"

namespace ceed {
namespace {

constexpr std::array<char, 8> kMagic = {'C', 'E', 'E', 'D', 'L', 'E', 'X', '\0'};

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

void put_str(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint64_t get_uint(std::istream& in, int bytes) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), bytes)) {
    throw std::runtime_error("truncated lexicon file");
  }
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::string get_str(std::istream& in) {
  const auto len = static_cast<std::size_t>(get_uint(in, 4));
  std::string s(len, '\0');
  if (len && !in.read(s.data(), static_cast<std::streamsize>(len))) {
    throw std::runtime_error("truncated lexicon file");
  }
  return s;
}

bool parse_count(std::string_view field, std::uint64_t& out) {
  while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.remove_suffix(1);
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  if (field.empty()) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc{} && ptr == field.data() + field.size();
}

}  // namespace

TitlesLexicon::TitlesLexicon(std::vector<std::string> titles,
                             std::map<std::string, double> anchor_probs, int max_len)
    : max_len_(max_len) {
  if (max_len_ < 1) throw ConfigError("lexicon max length must be >= 1");
  for (auto& t : titles) {
    if (!t.empty()) titles_.insert(std::move(t));
  }
  for (auto& [phrase, q] : anchor_probs) {
    anchors_.emplace(phrase, std::clamp(q, 0.0, 1.0));
  }
}

bool TitlesLexicon::lookup(std::string_view phrase) const {
  if (text::count_tokens(phrase) > static_cast<std::size_t>(max_len_)) return false;
  return titles_.count(std::string(phrase)) != 0;
}

double TitlesLexicon::anchor_prob(std::string_view phrase) const {
  auto it = anchors_.find(std::string(phrase));
  return it == anchors_.end() ? 0.0 : it->second;
}

std::vector<std::string> TitlesLexicon::titles() const {
  std::vector<std::string> out(titles_.begin(), titles_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::map<std::string, double> TitlesLexicon::anchors() const {
  return {anchors_.begin(), anchors_.end()};
}

void TitlesLexicon::write(std::ostream& out) const {
  out.write(kMagic.data(), kMagic.size());
  out.put(static_cast<char>(kFormatVersion));
  put_u32(out, static_cast<std::uint32_t>(max_len_));
  const auto sorted_titles = titles();
  put_u64(out, sorted_titles.size());
  for (const auto& t : sorted_titles) put_str(out, t);
  const auto sorted_anchors = anchors();
  put_u64(out, sorted_anchors.size());
  for (const auto& [phrase, q] : sorted_anchors) {
    put_str(out, phrase);
    put_u64(out, std::bit_cast<std::uint64_t>(q));
  }
}

TitlesLexicon TitlesLexicon::read(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw std::runtime_error("not a lexicon file (bad magic)");
  }
  const int version = in.get();
  if (version != kFormatVersion) {
    throw std::runtime_error("unsupported lexicon format version " + std::to_string(version));
  }
  const auto max_len = static_cast<int>(get_uint(in, 4));
  std::vector<std::string> titles(static_cast<std::size_t>(get_uint(in, 8)));
  for (auto& t : titles) t = get_str(in);
  std::map<std::string, double> anchors;
  const auto n = get_uint(in, 8);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string phrase = get_str(in);
    anchors.emplace(std::move(phrase), std::bit_cast<double>(get_uint(in, 8)));
  }
  return TitlesLexicon(std::move(titles), std::move(anchors), max_len);
}

void TitlesLexicon::save(const std::filesystem::path& path) const {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    write(out);
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

TitlesLexicon TitlesLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open lexicon " + path.string());
  try {
    return read(in);
  } catch (const std::runtime_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

TitlesLexicon build_lexicon(std::istream& titles_in, std::istream& anchors_in, int max_len,
                            LexiconBuildReport* report) {
  LexiconBuildReport local;
  LexiconBuildReport& rep = report ? *report : local;
  const auto limit = static_cast<std::size_t>(max_len);

  std::vector<std::string> titles;
  std::string line;
  while (std::getline(titles_in, line)) {
    ++rep.title_lines;
    std::string phrase = text::normalize_phrase(line);
    if (phrase.empty() || text::count_tokens(phrase) > limit) continue;
    titles.push_back(std::move(phrase));
  }
  std::sort(titles.begin(), titles.end());
  titles.erase(std::unique(titles.begin(), titles.end()), titles.end());
  rep.titles_kept = titles.size();

  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> counts;
  std::size_t lineno = 0;
  auto skip = [&](const std::string& why) {
    ++rep.anchors_skipped;
    if (rep.diagnostics.size() < 20) {
      rep.diagnostics.push_back("anchors line " + std::to_string(lineno) + ": " + why);
    }
  };
  while (std::getline(anchors_in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++rep.anchor_lines;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    std::uint64_t links = 0, occurrences = 0;
    if (t2 == std::string::npos ||
        !parse_count(std::string_view(line).substr(t1 + 1, t2 - t1 - 1), links) ||
        !parse_count(std::string_view(line).substr(t2 + 1), occurrences)) {
      skip("expected phrase<TAB>link_count<TAB>occurrence_count");
      continue;
    }
    if (occurrences == 0) {
      skip("occurrence_count is zero");
      continue;
    }
    std::string phrase = text::normalize_phrase(line.substr(0, t1));
    if (phrase.empty() || text::count_tokens(phrase) > limit) {
      skip("phrase empty or longer than max length");
      continue;
    }
    auto& c = counts[phrase];
    c.first += links;
    c.second += occurrences;
  }
  std::map<std::string, double> probs;
  for (const auto& [phrase, c] : counts) {
    probs.emplace(phrase, std::min(1.0, static_cast<double>(c.first) / static_cast<double>(c.second)));
  }
  rep.anchors_kept = probs.size();
  return TitlesLexicon(std::move(titles), std::move(probs), max_len);
}

TitlesLexicon build_lexicon(const std::filesystem::path& titles_file,
                            const std::filesystem::path& anchors_file, int max_len,
                            LexiconBuildReport* report) {
  std::ifstream titles(titles_file);
  if (!titles) throw ConfigError("cannot open titles file " + titles_file.string());
  std::ifstream anchors(anchors_file);
  if (!anchors) throw ConfigError("cannot open anchors file " + anchors_file.string());
  return build_lexicon(titles, anchors, max_len, report);
}

}  // namespace ceed
