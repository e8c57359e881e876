#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ceed/error.hpp"
#include "ceed/lexicon.hpp"
#include "ceed/log.hpp"
#include "ceed/pipeline.hpp"

namespace {

struct RunFlags {
  ceed::PipelineConfig cfg;
  std::string input;
  std::string lexicon;
  std::string out = "out";
  std::string stopwords;
  std::string window_start;
  std::string window_end;
  double cross_threshold = 0.0;
  std::vector<CLI::Option*> threshold_opts;
};

CLI::App* add_run_command(CLI::App& app, const std::string& name, const std::string& help,
                          RunFlags& f) {
  auto* cmd = app.add_subcommand(name, help);
  cmd->add_option("--input", f.input, "Tweets, one JSON object per line")->required();
  cmd->add_option("--lexicon", f.lexicon, "Binary lexicon from build-lexicon")->required();
  cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
  cmd->add_option("--stopwords", f.stopwords, "Stopword file, one word per line");
  cmd->add_option("--window-start", f.window_start, "ISO-8601 UTC, inclusive");
  cmd->add_option("--window-end", f.window_end, "ISO-8601 UTC, exclusive");
  cmd->add_option("--subwindows", f.cfg.subwindows, "Subwindows in the time window")
      ->capture_default_str();
  cmd->add_option("--hashtag-weight", f.cfg.params.hashtag_weight,
                  "Frequency multiplier for hashtag segments")
      ->capture_default_str();
  cmd->add_option("--knn", f.cfg.params.knn, "Neighbours per node for clustering")
      ->capture_default_str();
  cmd->add_option("--tau", f.cfg.params.tau, "Event filter ratio")->capture_default_str();
  cmd->add_option("--event-subwindows", f.cfg.params.event_subwindows,
                  "Subwindows per event for topic evolution")
      ->capture_default_str();
  cmd->add_option("--workers", f.cfg.params.workers, "Worker threads")->capture_default_str();
  cmd->add_flag("--dump-bursty", f.cfg.dump_bursty, "Also write bursty_segments.tsv");
  f.threshold_opts.push_back(cmd->add_option(
      "--cross-threshold", f.cross_threshold, "Mark event pairs with alpha at or above this value"));
  return cmd;
}

int run(const RunFlags& f, ceed::Stage stage) {
  ceed::PipelineConfig cfg = f.cfg;
  cfg.input = f.input;
  cfg.lexicon = f.lexicon;
  cfg.out_dir = f.out;
  if (!f.stopwords.empty()) cfg.stopwords = f.stopwords;
  try {
    if (!f.window_start.empty()) cfg.window_start = ceed::parse_timestamp(f.window_start);
    if (!f.window_end.empty()) cfg.window_end = ceed::parse_timestamp(f.window_end);
  } catch (const std::invalid_argument& e) {
    throw ceed::ConfigError(std::string("bad window timestamp: ") + e.what());
  }
  for (const auto* opt : f.threshold_opts) {
    if (opt->count() > 0) cfg.cross_threshold = f.cross_threshold;
  }
  const auto bundle = ceed::run_pipeline(cfg);
  for (const auto& path : ceed::emit_reports(bundle, cfg.out_dir, stage)) {
    std::cout << path.string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event detection, cross-event correlation and topic evolution for tweets"};
  app.require_subcommand(1);

  std::string titles, anchors, lexicon_out;
  int max_len = ceed::TitlesLexicon::kDefaultMaxLen;
  auto* build = app.add_subcommand("build-lexicon", "Compile titles and anchor counts");
  build->add_option("--titles", titles, "One title per line")->required();
  build->add_option("--anchors", anchors, "phrase<TAB>links<TAB>occurrences")->required();
  build->add_option("--out", lexicon_out, "Binary lexicon path")->required();
  build->add_option("--max-len", max_len, "Longest phrase in tokens")->capture_default_str();

  RunFlags flags;
  auto* detect = add_run_command(app, "detect", "Detect events", flags);
  auto* cross = add_run_command(app, "cross", "Detect events and correlate them", flags);
  auto* topics = add_run_command(app, "topics", "Detect events and trace their topics", flags);
  auto* full = add_run_command(app, "full", "Run every stage", flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ceed::ExitCode::kConfigError);
  }

  try {
    if (build->parsed()) {
      if (max_len < 1) throw ceed::ConfigError("--max-len must be at least 1");
      ceed::LexiconBuildReport report;
      const auto lex = ceed::build_lexicon(titles, anchors, max_len, &report);
      lex.save(lexicon_out);
      for (const auto& d : report.diagnostics) ceed::log::warn(d);
      std::cout << lexicon_out << ": " << lex.title_count() << " titles, "
                << lex.anchor_count() << " anchors\n";
      return 0;
    }
    if (detect->parsed()) return run(flags, ceed::Stage::kDetect);
    if (cross->parsed()) return run(flags, ceed::Stage::kCross);
    if (topics->parsed()) return run(flags, ceed::Stage::kTopics);
    if (full->parsed()) return run(flags, ceed::Stage::kFull);
  } catch (const ceed::Error& e) {
    std::cerr << "ceed: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "ceed: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
