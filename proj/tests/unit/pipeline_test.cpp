#include "ceed/pipeline.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ceed/error.hpp"
#include "ceed/synthetic.hpp"

namespace ceed {
namespace {

namespace fs = std::filesystem;

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ceed_pipeline_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    synth::Options opts;
    opts.originals = 1500;
    data_ = synth::planted(opts);
    write_corpus(data_.records);
    synth::lexicon_of(data_).save(dir_ / "lex.bin");
    cfg_.input = dir_ / "tweets.jsonl";
    cfg_.lexicon = dir_ / "lex.bin";
    cfg_.window_start = data_.window_start;
    cfg_.window_end = data_.window_end;
    cfg_.out_dir = dir_ / "out";
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write_corpus(const std::vector<RawTweetRecord>& records, const std::string& extra = "") {
    std::ofstream out(dir_ / "tweets.jsonl");
    synth::write_jsonl(out, records);
    out << extra;
  }

  fs::path dir_;
  synth::Dataset data_;
  PipelineConfig cfg_;
};

TEST_F(PipelineTest, ValidateRejectsBadConfig) {
  EXPECT_NO_THROW(cfg_.validate());
  auto bad = cfg_;
  bad.params.tau = 0.5;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = cfg_;
  bad.params.knn = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = cfg_;
  bad.cross_threshold = 1.5;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = cfg_;
  bad.window_end = *bad.window_start;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = cfg_;
  bad.params.workers = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST_F(PipelineTest, RunsEndToEndAndReconciles) {
  write_corpus(data_.records, "{not json\n");
  const auto bundle = run_pipeline(cfg_);
  EXPECT_EQ(bundle.events.size(), 3u);
  EXPECT_TRUE(bundle.manifest.reconciles());
  EXPECT_EQ(bundle.manifest.skipped, 1u);
  EXPECT_EQ(bundle.manifest.corpus.out_of_window, 5u);
  EXPECT_EQ(bundle.cross.size(), 3u);
  EXPECT_EQ(bundle.timelines.size(), 3u);
  EXPECT_TRUE(bundle.bursty.empty());
}

TEST_F(PipelineTest, EmitWritesStageFiles) {
  cfg_.dump_bursty = true;
  const auto bundle = run_pipeline(cfg_);
  EXPECT_FALSE(bundle.bursty.empty());
  const auto written = emit_reports(bundle, cfg_.out_dir, Stage::kDetect);
  ASSERT_EQ(written.size(), 3u);
  EXPECT_EQ(written[0].filename(), "bursty_segments.tsv");
  for (const auto& p : written) EXPECT_TRUE(fs::exists(p)) << p;
  for (const auto& e : fs::directory_iterator(cfg_.out_dir)) {
    EXPECT_NE(e.path().extension(), ".tmp");
  }
  EXPECT_EQ(report_files(Stage::kFull, false).size(), 8u);
  EXPECT_EQ(report_files(Stage::kCross, false).size(), 5u);
  EXPECT_EQ(report_files(Stage::kTopics, true).size(), 6u);
}

TEST_F(PipelineTest, ErrorsCarryExitCodes) {
  auto missing = cfg_;
  missing.input = dir_ / "nope.jsonl";
  try {
    run_pipeline(missing);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ExitCode::kConfigError);
  }

  auto empty = cfg_;
  empty.window_start = data_.window_end + 86400;
  empty.window_end = data_.window_end + 2 * 86400;
  try {
    run_pipeline(empty);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ExitCode::kEmptyCorpus);
  }

  std::vector<RawTweetRecord> flat;
  for (int i = 0; i < 20; ++i) {
    RawTweetRecord r;
    r.id = std::to_string(i);
    r.text = "same words";
    r.user_id = "u";
    r.created_at = data_.window_start + i * 40000;
    flat.push_back(r);
  }
  write_corpus(flat);
  try {
    run_pipeline(cfg_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ExitCode::kNoBurst);
  }
}

TEST_F(PipelineTest, NoEventsWhenNothingClusters) {
  // Two bursty words that never co-occur in time.
  std::vector<RawTweetRecord> recs;
  int n = 0;
  auto add = [&](const std::string& text, Timestamp at) {
    RawTweetRecord r;
    r.id = std::to_string(n++);
    r.text = text;
    r.user_id = "u" + std::to_string(n % 5);
    r.created_at = at;
    r.retweet_count = 3;
    r.followers_count = 10;
    recs.push_back(r);
  };
  for (int i = 0; i < 40; ++i) add("bg" + std::to_string(i), data_.window_start + i * 20000);
  for (int i = 0; i < 10; ++i) add("alpha", data_.window_start + 100 + i);
  for (int i = 0; i < 10; ++i) add("omega", data_.window_start + 8 * 86400 + i);
  write_corpus(recs);
  try {
    run_pipeline(cfg_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ExitCode::kNoEvents);
  }
}

TEST_F(PipelineTest, DefaultWindowIsDataSpan) {
  auto cfg = cfg_;
  cfg.window_start.reset();
  cfg.window_end.reset();
  const auto bundle = run_pipeline(cfg);
  EXPECT_EQ(bundle.manifest.corpus.out_of_window, 0u);
  EXPECT_LT(bundle.manifest.window_start, data_.window_start);
}

TEST_F(PipelineTest, WorkerCountDoesNotChangeResults) {
  auto one = cfg_;
  auto many = cfg_;
  many.params.workers = 6;
  const auto a = run_pipeline(one);
  const auto b = run_pipeline(many);
  ASSERT_EQ(a.events.size(), b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    EXPECT_EQ(a.events[i].segments, b.events[i].segments);
    EXPECT_EQ(a.events[i].worthiness, b.events[i].worthiness);
  }
  for (std::size_t i = 0; i < a.cross.size(); ++i)
    for (std::size_t j = 0; j < a.cross.size(); ++j) EXPECT_EQ(a.cross.at(i, j), b.cross.at(i, j));
}

}  // namespace
}  // namespace ceed
