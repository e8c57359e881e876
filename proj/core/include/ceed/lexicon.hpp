#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ceed {

// Dictionary of known phrases plus the anchor probability Q(s): the share of
// a phrase's occurrences that appear as link text. Immutable once built.
class TitlesLexicon {
 public:
  static constexpr int kDefaultMaxLen = 5;
  static constexpr std::uint8_t kFormatVersion = 1;

  TitlesLexicon() = default;
  // Inputs must already be normalized; probabilities are clamped to [0,1].
  TitlesLexicon(std::vector<std::string> titles,
                std::map<std::string, double> anchor_probs,
                int max_len = kDefaultMaxLen);

  bool lookup(std::string_view phrase) const;
  double anchor_prob(std::string_view phrase) const;

  int max_len() const { return max_len_; }
  std::size_t title_count() const { return titles_.size(); }
  std::size_t anchor_count() const { return anchors_.size(); }
  // Sorted copies, for persistence and inspection.
  std::vector<std::string> titles() const;
  std::map<std::string, double> anchors() const;

  // Binary layout, all integers little endian:
  //   "CEEDLEX\0" | u8 version | u32 max_len
  //   u64 title_count  { u32 len, bytes }*
  //   u64 anchor_count { u32 len, bytes, f64 Q }*
  // Entries are written in lexicographic order.
  void write(std::ostream& out) const;
  static TitlesLexicon read(std::istream& in);
  void save(const std::filesystem::path& path) const;
  static TitlesLexicon load(const std::filesystem::path& path);

 private:
  int max_len_ = kDefaultMaxLen;
  std::unordered_set<std::string> titles_;
  std::unordered_map<std::string, double> anchors_;
};

struct LexiconBuildReport {
  std::size_t title_lines = 0;
  std::size_t titles_kept = 0;
  std::size_t anchor_lines = 0;
  std::size_t anchors_kept = 0;
  std::size_t anchors_skipped = 0;
  std::vector<std::string> diagnostics;
};

// Titles: one per line. Anchors: "phrase<TAB>link_count<TAB>occurrence_count".
// Phrases longer than max_len tokens are dropped; duplicate anchor phrases
// (after normalization) pool their counts.
TitlesLexicon build_lexicon(std::istream& titles, std::istream& anchors, int max_len,
                            LexiconBuildReport* report = nullptr);
// Throws ConfigError when a file cannot be opened.
TitlesLexicon build_lexicon(const std::filesystem::path& titles_file,
                            const std::filesystem::path& anchors_file, int max_len,
                            LexiconBuildReport* report = nullptr);

}  // namespace ceed
