#include "ceed/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <system_error>

#include "ceed/error.hpp"
#include "ceed/log.hpp"
#include "ceed/reports.hpp"

namespace ceed {

namespace {

class StageTimer {
 public:
  StageTimer(Timings* sink, std::string name)
      : sink_(sink), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    if (!sink_) return;
    const auto d = std::chrono::steady_clock::now() - start_;
    sink_->emplace_back(name_, std::chrono::duration<double, std::milli>(d).count());
  }

 private:
  Timings* sink_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

Analysis analyze(const Corpus& corpus, const TitlesLexicon& lexicon,
                 const StopwordSet& stopwords, const AnalysisParams& params,
                 Timings* timings) {
  Analysis out;
  {
    StageTimer t(timings, "segment");
    out.index = build_index(corpus, lexicon, stopwords, params.hashtag_weight, params.workers);
    out.df = window_document_frequency(out.index);
  }
  std::vector<BurstScore> bursty;
  {
    StageTimer t(timings, "burst");
    bursty = extract_bursty(out.index, params.workers);
  }
  log::info("bursty segments: ", bursty.size());
  {
    StageTimer t(timings, "events");
    out.detection = detect_events(out.index, lexicon, out.df, std::move(bursty), params.knn,
                                  params.tau, params.workers);
  }
  log::info("events: ", out.detection.events.size(), " of ",
            out.detection.candidates.size(), " candidates");
  {
    StageTimer t(timings, "crossevent");
    out.cross = cross_matrix(out.detection.events, out.index, out.df, params.workers);
  }
  {
    StageTimer t(timings, "topics");
    out.timelines = evolve_all(out.detection.events, out.index, out.df, params.knn,
                               params.event_subwindows, params.workers);
  }
  return out;
}

void PipelineConfig::validate() const {
  if (input.empty()) throw ConfigError("--input is required");
  if (lexicon.empty()) throw ConfigError("--lexicon is required");
  if (subwindows < 1) throw ConfigError("subwindows must be at least 1");
  if (params.hashtag_weight < 1) throw ConfigError("hashtag weight must be at least 1");
  if (params.knn < 1) throw ConfigError("knn must be at least 1");
  if (!(params.tau >= 1.0) || !std::isfinite(params.tau)) {
    throw ConfigError("tau must be a finite number >= 1");
  }
  if (params.event_subwindows < 1) throw ConfigError("event subwindows must be at least 1");
  if (params.workers < 1) throw ConfigError("workers must be at least 1");
  if (window_start && window_end && *window_end <= *window_start) {
    throw ConfigError("window end must be after window start");
  }
  if (cross_threshold && !(*cross_threshold >= 0.0 && *cross_threshold <= 1.0)) {
    throw ConfigError("cross threshold must lie in [0, 1]");
  }
}

ReportBundle make_bundle(const Corpus& corpus, const Analysis& analysis,
                         const PipelineConfig& cfg, const RunManifest& manifest) {
  const auto& index = analysis.index;
  ReportBundle bundle;
  if (cfg.dump_bursty) {
    for (const auto& b : analysis.detection.bursty) {
      bundle.bursty.push_back({b.text, b.bursty_subwindow, b.probability, b.weight});
    }
  }
  for (const auto& e : analysis.detection.events) {
    EventRow row;
    row.id = e.id;
    row.label = e.label;
    for (SegmentId s : e.segments) row.segments.push_back(index.at(s).text);
    for (const auto& edge : e.pair_sims) {
      row.edges.push_back({{index.at(edge.a).text, index.at(edge.b).text}, edge.similarity});
    }
    row.worthiness = e.worthiness;
    row.tweet_count = e.tweets.size();
    if (!e.tweets.empty()) {
      row.first_tweet = corpus.tweet(e.tweets.front()).created_at;
      row.last_tweet = corpus.tweet(e.tweets.back()).created_at;
    }
    bundle.events.push_back(std::move(row));
  }
  bundle.cross = analysis.cross;
  for (const auto& tl : analysis.timelines) {
    TimelineRow row;
    row.event_id = tl.event_id;
    row.label = tl.label;
    row.subwindows = tl.subwindows;
    row.start = tl.start;
    row.end = tl.end;
    row.diagnostic = tl.diagnostic;
    for (const auto& topic : tl.topics) {
      TopicRow tr;
      tr.topic_id = topic.topic_id;
      for (SegmentId s : topic.segments) tr.segments.push_back(index.at(s).text);
      tr.popularity = topic.popularity;
      row.topics.push_back(std::move(tr));
    }
    bundle.timelines.push_back(std::move(row));
  }
  bundle.manifest = manifest;
  return bundle;
}

ReportBundle run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  RunManifest manifest;
  manifest.config = cfg;

  std::vector<RawTweetRecord> records;
  {
    StageTimer t(&manifest.timings, "ingest");
    std::ifstream in(cfg.input);
    if (!in) throw ConfigError("cannot open input: " + cfg.input.string());
    ReadStats stats;
    records = read_records(in, stats);
    manifest.lines = stats.lines;
    manifest.skipped = stats.skipped;
    manifest.diagnostics = stats.diagnostics;
  }
  if (manifest.skipped > 0) log::warn("skipped ", manifest.skipped, " malformed lines");

  const auto span = data_span(records);
  if (!span && !(cfg.window_start && cfg.window_end)) throw EmptyWindowError();
  WindowConfig window;
  window.window_start = cfg.window_start ? *cfg.window_start : span->first;
  window.window_end = cfg.window_end ? *cfg.window_end : span->second;
  window.subwindows = cfg.subwindows;
  window.hashtag_weight = cfg.params.hashtag_weight;
  window.validate();
  manifest.window_start = window.window_start;
  manifest.window_end = window.window_end;

  const TitlesLexicon lexicon = TitlesLexicon::load(cfg.lexicon);
  const StopwordSet stopwords =
      cfg.stopwords ? StopwordSet::from_file(*cfg.stopwords) : StopwordSet::english();

  Corpus corpus;
  {
    StageTimer t(&manifest.timings, "corpus");
    corpus = build_corpus(records, window);
  }
  records.clear();
  records.shrink_to_fit();
  manifest.corpus = corpus.counts();

  Analysis analysis = analyze(corpus, lexicon, stopwords, cfg.params, &manifest.timings);
  manifest.segments = analysis.index.size();
  manifest.bursty = analysis.detection.bursty.size();
  manifest.candidates = analysis.detection.candidates.size();
  manifest.events = analysis.detection.events.size();
  if (analysis.detection.events.empty()) throw NoEventsError();
  return make_bundle(corpus, analysis, cfg, manifest);
}

std::vector<std::string> report_files(Stage stage, bool dump_bursty) {
  std::vector<std::string> files;
  if (dump_bursty) files.push_back("bursty_segments.tsv");
  files.push_back("events.json");
  if (stage == Stage::kCross || stage == Stage::kFull) {
    files.insert(files.end(), {"cross_matrix.csv", "cross_pairs.csv", "cross_heatmap.tsv"});
  }
  if (stage == Stage::kTopics || stage == Stage::kFull) {
    files.insert(files.end(),
                 {"topics.json", "topic_timeline.csv", "topic_timeline_long.csv"});
  }
  files.push_back("manifest.json");
  return files;
}

namespace {

std::string render(const std::string& name, const ReportBundle& b) {
  using Fn = std::string (*)(const ReportBundle&);
  static const std::map<std::string, Fn> kRenderers = {
      {"bursty_segments.tsv", reports::bursty_tsv},
      {"events.json", reports::events_json},
      {"cross_matrix.csv", reports::cross_grid_csv},
      {"cross_pairs.csv", reports::cross_pairs_csv},
      {"cross_heatmap.tsv", reports::cross_heatmap_tsv},
      {"topics.json", reports::topics_json},
      {"topic_timeline.csv", reports::topic_timeline_csv},
      {"topic_timeline_long.csv", reports::topic_timeline_long_csv},
      {"manifest.json", reports::manifest_json},
  };
  return kRenderers.at(name)(b);
}

}  // namespace

std::vector<std::filesystem::path> emit_reports(const ReportBundle& bundle,
                                                const std::filesystem::path& out_dir,
                                                Stage stage) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_dir.string());

  const auto names = report_files(stage, !bundle.bursty.empty() || bundle.manifest.config.dump_bursty);
  std::vector<fs::path> temps;
  std::vector<fs::path> finals;
  auto cleanup = [&] {
    for (const auto& p : temps) fs::remove(p, ec);
  };
  try {
    for (const auto& name : names) {
      const fs::path final_path = out_dir / name;
      const fs::path tmp = out_dir / (name + ".tmp");
      temps.push_back(tmp);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      const std::string body = render(name, bundle);
      out.write(body.data(), static_cast<std::streamsize>(body.size()));
      out.close();
      if (!out) throw ConfigError("cannot write " + tmp.string());
      finals.push_back(final_path);
    }
    for (std::size_t i = 0; i < temps.size(); ++i) {
      fs::rename(temps[i], finals[i]);
    }
  } catch (const fs::filesystem_error& e) {
    cleanup();
    throw ConfigError(std::string("cannot write reports: ") + e.what());
  } catch (...) {
    cleanup();
    throw;
  }
  return finals;
}

}  // namespace ceed
