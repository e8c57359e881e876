#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ceed/ingest.hpp"
#include "ceed/lexicon.hpp"

namespace ceed::synth {

// Ground truth for one planted event.
struct PlantedEvent {
  std::string name;
  Timestamp start = 0;
  Timestamp end = 0;  // inclusive
  std::vector<std::string> segments;  // every segment expected in the event
  std::vector<std::string> early;     // segments confined to the opening phase
};

struct AnchorCounts {
  std::uint64_t links = 0;
  std::uint64_t occurrences = 0;
};

struct Options {
  std::size_t originals = 5000;
  std::uint64_t seed = 7;
  // Fraction of non-quiet originals that receive folded retweet records.
  double retweet_share = 0.1;
  std::size_t orphan_retweets = 3;
  std::size_t out_of_window = 5;
};

struct Dataset {
  std::vector<RawTweetRecord> records;
  std::vector<std::string> titles;
  std::map<std::string, AnchorCounts> anchors;
  Timestamp window_start = 0;
  Timestamp window_end = 0;
  int subwindows = 10;
  std::vector<PlantedEvent> events;  // A, B, C
};

// Ten days of background chatter with three planted events: A and B share
// day 3, C sits on day 7. A has an opening phase with its own vocabulary.
Dataset planted(const Options& opts = {});

TitlesLexicon lexicon_of(const Dataset& data, int max_len = TitlesLexicon::kDefaultMaxLen);

std::string to_json_line(const RawTweetRecord& record);
void write_jsonl(std::ostream& out, std::span<const RawTweetRecord> records);
void write_titles(std::ostream& out, const Dataset& data);
void write_anchors(std::ostream& out, const Dataset& data);

}  // namespace ceed::synth
