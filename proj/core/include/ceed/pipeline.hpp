#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ceed/burst.hpp"
#include "ceed/crossevent.hpp"
#include "ceed/events.hpp"
#include "ceed/ingest.hpp"
#include "ceed/lexicon.hpp"
#include "ceed/segment.hpp"
#include "ceed/tfidf.hpp"
#include "ceed/topics.hpp"

namespace ceed {

struct AnalysisParams {
  int hashtag_weight = 3;
  int knn = 4;
  double tau = 4.0;
  int event_subwindows = 10;
  int workers = 1;
};

// Wall-clock milliseconds per stage, in execution order.
using Timings = std::vector<std::pair<std::string, double>>;

// Everything computed from one corpus. The corpus passed to analyze() must
// outlive the result.
struct Analysis {
  SegmentIndex index;
  DocumentFrequency df;
  EventDetection detection;
  CrossEventMatrix cross;
  std::vector<TopicTimeline> timelines;
};

// segment -> burst -> events -> crossevent -> topics. Throws NoBurstError;
// an empty event list is returned as-is.
Analysis analyze(const Corpus& corpus, const TitlesLexicon& lexicon,
                 const StopwordSet& stopwords, const AnalysisParams& params,
                 Timings* timings = nullptr);

enum class Stage { kDetect, kCross, kTopics, kFull };

struct PipelineConfig {
  std::filesystem::path input;
  std::filesystem::path lexicon;
  std::optional<std::filesystem::path> stopwords;
  std::optional<Timestamp> window_start;  // defaults to the data span
  std::optional<Timestamp> window_end;
  int subwindows = 10;
  AnalysisParams params;
  std::filesystem::path out_dir = "out";
  bool dump_bursty = false;
  std::optional<double> cross_threshold;

  // Throws ConfigError.
  void validate() const;
};

struct BurstyRow {
  std::string segment;
  int subwindow = 0;
  double probability = 0.0;
  double weight = 0.0;
};

struct EventRow {
  std::string id;
  std::string label;
  std::vector<std::string> segments;
  std::vector<std::pair<std::pair<std::string, std::string>, double>> edges;
  double worthiness = 0.0;
  std::size_t tweet_count = 0;
  Timestamp first_tweet = 0;
  Timestamp last_tweet = 0;
};

struct TopicRow {
  int topic_id = 0;
  std::vector<std::string> segments;
  std::vector<double> popularity;
};

struct TimelineRow {
  std::string event_id;
  std::string label;
  int subwindows = 0;
  Timestamp start = 0;
  Timestamp end = 0;
  std::vector<TopicRow> topics;
  std::string diagnostic;
};

struct RunManifest {
  PipelineConfig config;
  Timestamp window_start = 0;
  Timestamp window_end = 0;
  std::size_t lines = 0;
  std::size_t skipped = 0;
  CorpusCounts corpus;
  std::size_t segments = 0;
  std::size_t bursty = 0;
  std::size_t candidates = 0;
  std::size_t events = 0;
  Timings timings;
  std::vector<std::string> diagnostics;

  bool reconciles() const {
    return lines == corpus.kept + corpus.retweets + corpus.out_of_window + skipped;
  }
};

struct ReportBundle {
  std::vector<BurstyRow> bursty;  // only filled when dump_bursty is set
  std::vector<EventRow> events;
  CrossEventMatrix cross;
  std::vector<TimelineRow> timelines;
  RunManifest manifest;
};

ReportBundle make_bundle(const Corpus& corpus, const Analysis& analysis,
                         const PipelineConfig& cfg, const RunManifest& manifest);

// Reads, analyzes and returns all reports. Throws ConfigError,
// EmptyWindowError, NoBurstError or NoEventsError.
ReportBundle run_pipeline(const PipelineConfig& cfg);

// Files produced per stage (manifest.json is always written).
std::vector<std::string> report_files(Stage stage, bool dump_bursty);

// Writes every report through temp-file + rename; on failure nothing new
// is left behind. Returns the paths written.
std::vector<std::filesystem::path> emit_reports(const ReportBundle& bundle,
                                                const std::filesystem::path& out_dir,
                                                Stage stage);

}  // namespace ceed
