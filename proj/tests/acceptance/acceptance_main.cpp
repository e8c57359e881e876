// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ceed/burst.hpp"
#include "ceed/crossevent.hpp"
#include "ceed/events.hpp"
#include "ceed/pipeline.hpp"
#include "ceed/synthetic.hpp"
#include "ceed/topics.hpp"
#include "json.hpp"
#include "oracle.hpp"
#include "random_corpus.hpp"

namespace fs = std::filesystem;
using namespace ceed;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages of one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  std::size_t checks() const { return checks_; }
  Outcome finish(const std::string& summary) const {
    Outcome o{failures_ == 0, summary};
    for (const auto& n : notes_) o.detail += "; " + n;
    return o;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

std::string num(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct ChildRun {
  int exit_code = -1;
  double seconds = 0.0;
  long max_rss_kb = 0;
};

ChildRun run_child(const std::vector<std::string>& argv) {
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);
  ChildRun out;
  const auto t0 = std::chrono::steady_clock::now();
  const pid_t pid = fork();
  if (pid == 0) {
    if (!std::freopen("/dev/null", "w", stdout)) _exit(126);
    execv(args[0], args.data());
    _exit(127);
  }
  int status = 0;
  rusage usage{};
  wait4(pid, &status, 0, &usage);
  out.seconds = seconds_since(t0);
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  out.max_rss_kb = usage.ru_maxrss;
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Files {
  fs::path tweets;
  fs::path lexicon;
};

Files write_dataset(const synth::Dataset& d, const fs::path& dir) {
  fs::create_directories(dir);
  Files f{dir / "tweets.jsonl", dir / "lexicon.bin"};
  std::ofstream out(f.tweets);
  synth::write_jsonl(out, d.records);
  synth::lexicon_of(d).save(f.lexicon);
  return f;
}

// ---------------------------------------------------------------------------

Outcome point_checks() {
  Checker c;
  for (double E : {0.5, 5.0, 50.0, 1234.5}) {
    for (double s : {0.1, 1.0, 5.0, 42.0}) {
      const double pb = burst_probability(E + s, E, s);
      c.expect(std::fabs(pb - 0.5) <= 1e-12, "P_b(E+sigma) = " + num(pb, 17));
    }
  }
  c.expect(std::tanh(0.0) == 0.0, "tanh(0) != 0");
  const TitlesLexicon lex({}, {{"known", 0.0}});
  c.expect(newsworthiness("known", lex) == 1.0, "mu(Q=0 word) != 1");
  c.expect(newsworthiness("unseen", lex) == 1.0, "mu(unseen word) != 1");

  const auto rc = testing::random_case(5);
  const auto corpus = build_corpus(rc.records, rc.window);
  const auto index = build_index(corpus, rc.lexicon, StopwordSet::english(), 2);
  const auto df = window_document_frequency(index);
  EventCluster e;
  e.id = "E1";
  e.segments = {0, 1};
  e.tweets = {index.at(0).tweets.begin(), index.at(0).tweets.end()};
  c.expect(cross_factor(e, e, index, df) == 1.0, "self alpha != 1");
  const std::vector<EventCluster> one = {e};
  c.expect(cross_matrix(one, index, df).at(0, 0) == 1.0, "matrix diagonal != 1");
  return c.finish("P_b(E+sigma)=0.5, tanh(0)=0, mu=1 for Q=0 words, self alpha=1 (" +
                  std::to_string(c.checks()) + " checks)");
}

Outcome oracle_equivalence(int seeds) {
  Checker c;
  for (int s = 1; s <= seeds; ++s) {
    const auto diff = testing::compare_with_reference(static_cast<std::uint64_t>(s), 1e-9, 1 + s % 4);
    c.expect(!diff, "seed " + std::to_string(s) + ": " + diff.value_or(""));
  }
  return c.finish(std::to_string(seeds) + " random corpora (<= 500 tweets) agree with the dense "
                  "reference within 1e-9, clusters exact");
}

// Random profile pair with weights summing to one over M subwindows.
TemporalProfile random_profile(std::mt19937_64& rng, std::size_t M, const DocumentFrequency& df,
                               std::size_t vocab) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TemporalProfile p;
  p.weight.assign(M, 0.0);
  p.docs.resize(M);
  double total = 0;
  for (auto& w : p.weight) {
    w = u(rng) < 0.4 ? 0.0 : u(rng);
    total += w;
  }
  if (total == 0) {
    p.weight[0] = 1.0;
    total = 1.0;
  }
  for (std::size_t m = 0; m < M; ++m) {
    p.weight[m] /= total;
    if (p.weight[m] == 0) continue;
    TermCounts tc;
    for (SegmentId t = 0; t < vocab; ++t)
      if (u(rng) < 0.3) tc.push_back({t, 1 + static_cast<std::uint32_t>(rng() % 5)});
    p.docs[m] = weigh(tc, df);
  }
  return p;
}

struct CorpusBundle {
  testing::RandomCase rc;
  Corpus corpus;
  SegmentIndex index;
  DocumentFrequency df;
};

// Heap allocated: the index points into the corpus.
std::unique_ptr<CorpusBundle> random_bundle(std::uint64_t seed) {
  auto b = std::make_unique<CorpusBundle>();
  b->rc = testing::random_case(seed, 200);
  try {
    b->corpus = build_corpus(b->rc.records, b->rc.window);
  } catch (const EmptyWindowError&) {
    return nullptr;
  }
  b->index = build_index(b->corpus, b->rc.lexicon, StopwordSet::english(), b->rc.window.hashtag_weight);
  if (b->index.size() < 2) return nullptr;
  b->df = window_document_frequency(b->index);
  return b;
}

EventCluster random_event(std::mt19937_64& rng, const SegmentIndex& index, const std::string& id) {
  EventCluster e;
  e.id = id;
  const std::size_t n = 2 + rng() % std::min<std::size_t>(8, index.size() - 1);
  std::set<SegmentId> segs;
  while (segs.size() < n) segs.insert(static_cast<SegmentId>(rng() % index.size()));
  std::set<TweetIndex> tweets;
  for (auto s : segs) {
    e.segments.push_back(s);
    for (auto t : index.at(s).tweets) tweets.insert(t);
  }
  e.tweets.assign(tweets.begin(), tweets.end());
  e.label = index.at(e.segments.front()).text;
  return e;
}

Outcome bound_suites(int trials) {
  Checker c;
  std::mt19937_64 rng(2024);

  // Similarity values and symmetry on random profiles.
  int sim_trials = 0;
  for (; sim_trials < trials; ++sim_trials) {
    const std::size_t vocab = 1 + rng() % 12, M = 1 + rng() % 10;
    std::vector<std::uint32_t> dfv(vocab);
    for (auto& d : dfv) d = static_cast<std::uint32_t>(rng() % 30);
    const DocumentFrequency df(30, dfv);
    const auto a = random_profile(rng, M, df, vocab);
    const auto b = random_profile(rng, M, df, vocab);
    const double ab = profile_similarity(a, b), ba = profile_similarity(b, a);
    c.expect(ab >= 0.0 && ab <= 1.0, "profile similarity " + num(ab, 17));
    c.expect(ab == ba, "profile similarity asymmetric");
    const auto& da = a.docs[0];
    const auto& db = b.docs[0];
    const double cs = cosine(da, db);
    c.expect(cs >= 0.0 && cs <= 1.0 && cs == cosine(db, da), "cosine " + num(cs, 17));
  }

  // Matrices, alpha and topic mass on random corpora.
  int alpha_trials = 0, topic_trials = 0, matrix_trials = 0, weight_trials = 0;
  const double alpha_cap = std::tanh(1.0) + 1e-12;
  for (std::uint64_t seed = 1;
       alpha_trials < trials || topic_trials < trials || matrix_trials < trials; ++seed) {
    auto b = random_bundle(seed + 50000);
    if (!b) continue;
    const auto& index = b->index;
    for (const auto& s : score_segments(index)) {
      c.expect(s.weight >= 0.0, "negative burst weight");
      ++weight_trials;
    }

    std::vector<TemporalProfile> profiles;
    std::vector<std::string> labels;
    for (SegmentId s = 0; s < std::min<std::size_t>(index.size(), 12); ++s) {
      profiles.push_back(window_profile(index, s, b->df));
      labels.push_back(index.at(s).text);
    }
    const auto sm = similarity_matrix(profiles, labels, 2);
    for (std::size_t i = 0; i < sm.size(); ++i) {
      for (std::size_t j = 0; j < sm.size(); ++j) {
        c.expect(sm.at(i, j) >= 0.0 && sm.at(i, j) <= 1.0, "matrix entry out of range");
        c.expect(sm.at(i, j) == sm.at(j, i), "similarity matrix asymmetric");
      }
    }
    ++matrix_trials;

    if (alpha_trials >= trials && topic_trials >= trials) continue;
    std::vector<EventCluster> events;
    for (int i = 0; i < 8; ++i) events.push_back(random_event(rng, index, "E" + std::to_string(i + 1)));
    const auto cm = cross_matrix(events, index, b->df);
    for (std::size_t i = 0; i < cm.size(); ++i) {
      for (std::size_t j = 0; j < cm.size(); ++j) {
        c.expect(cm.at(i, j) == cm.at(j, i), "alpha asymmetric");
        if (i == j) {
          c.expect(cm.at(i, i) == 1.0, "alpha diagonal != 1");
        } else if (i < j && alpha_trials < trials) {
          c.expect(cm.at(i, j) >= 0.0 && cm.at(i, j) <= alpha_cap, "alpha " + num(cm.at(i, j), 17));
          ++alpha_trials;
        }
      }
    }

    for (const auto& e : events) {
      if (topic_trials >= trials) break;
      const int k = 1 + static_cast<int>(rng() % 5);
      const int M = 1 + static_cast<int>(rng() % 10);
      const auto tl = evolve(e, index, b->df, k, M);
      for (int m = 0; m < M; ++m) {
        double sum = 0;
        for (const auto& t : tl.topics) {
          const double v = t.popularity[static_cast<std::size_t>(m)];
          c.expect(v >= 0.0 && v <= 1.0, "T(m) out of range");
          sum += v;
        }
        c.expect(sum <= 1.0 + 1e-12, "sum T(m) = " + num(sum, 17));
      }
      ++topic_trials;
    }
  }

  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < trials; ++i, ++weight_trials) {
    const double w = segment_weight(u(rng), std::floor(u(rng) * 1e4), std::floor(u(rng) * 1e6),
                                    std::floor(std::pow(10.0, 9 * u(rng))));
    c.expect(w >= 0.0, "negative segment weight");
  }
  return c.finish(std::to_string(sim_trials) + " similarity, " + std::to_string(matrix_trials) +
                  " matrix, " + std::to_string(alpha_trials) + " alpha, " +
                  std::to_string(topic_trials) + " topic and " + std::to_string(weight_trials) +
                  " weight trials within bounds");
}

// Planted event whose segment list overlaps the detected event most.
int match_planted(const EventRow& e, const synth::Dataset& d) {
  int best = -1;
  std::size_t best_hits = 0;
  for (std::size_t p = 0; p < d.events.size(); ++p) {
    const auto& truth = d.events[p].segments;
    std::size_t hits = 0;
    for (const auto& s : e.segments) hits += std::count(truth.begin(), truth.end(), s);
    if (hits > best_hits) {
      best_hits = hits;
      best = static_cast<int>(p);
    }
  }
  return best;
}

Outcome planted_events(const fs::path& work) {
  Checker c;
  const auto data = synth::planted();
  const auto files = write_dataset(data, work / "planted");
  PipelineConfig cfg;
  cfg.input = files.tweets;
  cfg.lexicon = files.lexicon;
  cfg.window_start = data.window_start;
  cfg.window_end = data.window_end;
  cfg.subwindows = data.subwindows;

  const auto t0 = std::chrono::steady_clock::now();
  ReportBundle bundle;
  try {
    bundle = run_pipeline(cfg);
  } catch (const std::exception& e) {
    c.expect(false, std::string("pipeline failed: ") + e.what());
    return c.finish("planted corpus");
  }
  const double secs = seconds_since(t0);

  c.expect(bundle.events.size() == 3, "events = " + std::to_string(bundle.events.size()));
  std::map<std::string, std::size_t> pos;  // planted name -> event index
  for (std::size_t i = 0; i < bundle.events.size(); ++i) {
    const int p = match_planted(bundle.events[i], data);
    if (p >= 0) pos.emplace(data.events[static_cast<std::size_t>(p)].name, i);
  }
  c.expect(pos.size() == 3, "events do not map onto A, B, C");
  double ab = 0, ac = 0, bc = 0;
  if (pos.size() == 3) {
    ab = bundle.cross.at(pos["A"], pos["B"]);
    ac = bundle.cross.at(pos["A"], pos["C"]);
    bc = bundle.cross.at(pos["B"], pos["C"]);
    c.expect(ab > std::max(ac, bc), "alpha(A,B) not the largest");

    const auto& tl = bundle.timelines[pos["A"]];
    const auto& early = data.events[0].early;
    const TopicRow* early_topic = nullptr;
    for (const auto& t : tl.topics) {
      for (const auto& s : t.segments) {
        if (std::count(early.begin(), early.end(), s)) early_topic = &t;
      }
      if (early_topic) break;
    }
    c.expect(early_topic != nullptr, "no early topic for A");
    if (early_topic) {
      for (int m = 0; m < 3; ++m) {
        for (const auto& t : tl.topics) {
          if (&t == early_topic) continue;
          c.expect(early_topic->popularity[static_cast<std::size_t>(m)] >
                       t.popularity[static_cast<std::size_t>(m)],
                   "early topic not dominant in subwindow " + std::to_string(m));
        }
      }
    }
  }
  c.expect(secs <= 10.0, "runtime " + num(secs) + " s");
  return c.finish(std::to_string(data.records.size()) + " records, " +
                  std::to_string(bundle.events.size()) + " events, alpha(A,B)=" + num(ab, 4) +
                  " alpha(A,C)=" + num(ac, 4) + " alpha(B,C)=" + num(bc, 4) + ", " +
                  num(secs, 3) + " s");
}

Outcome five_scores() {
  Checker c;
  const std::vector<double> mu = {1.7614331627247717, 1.6606617003112545, 1.5248289851004615,
                                  1.412936448555728, 0.693081912381193};
  std::vector<EventCluster> candidates;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    EventCluster e;
    e.id = "C" + std::to_string(i + 1);
    e.worthiness = mu[i];
    candidates.push_back(e);
  }
  const auto kept = filter_events(candidates, 4.0);
  c.expect(kept.size() == 5, "kept " + std::to_string(kept.size()));
  return c.finish("tau=4 keeps " + std::to_string(kept.size()) + " of 5 scores");
}

nlohmann::json manifest_without_run_fields(const fs::path& p) {
  auto j = nlohmann::json::parse(slurp(p));
  j.erase("timings_ms");
  j["config"].erase("workers");
  return j;
}

Outcome determinism(const std::string& cli, const fs::path& work) {
  Checker c;
  const auto data = synth::planted();
  const auto files = write_dataset(data, work / "determinism");
  auto run = [&](int workers) {
    const fs::path out = work / "determinism" / ("out_w" + std::to_string(workers));
    fs::remove_all(out);
    const auto r = run_child({cli, "full", "--input", files.tweets.string(), "--lexicon",
                              files.lexicon.string(), "--window-start", "2019-02-14T00:00:00Z",
                              "--window-end", "2019-02-24T00:00:00Z", "--dump-bursty",
                              "--workers", std::to_string(workers), "--out", out.string()});
    c.expect(r.exit_code == 0, "workers " + std::to_string(workers) + " exit " +
                                   std::to_string(r.exit_code));
    return out;
  };
  const auto a = run(1), b = run(8);
  std::size_t compared = 0;
  for (const auto& name : report_files(Stage::kFull, true)) {
    if (name == "manifest.json") {
      c.expect(fs::exists(a / name) && fs::exists(b / name) &&
                   manifest_without_run_fields(a / name) == manifest_without_run_fields(b / name),
               "manifest differs beyond timings/workers");
      continue;
    }
    c.expect(fs::exists(a / name) && slurp(a / name) == slurp(b / name), name + " differs");
    ++compared;
  }
  return c.finish(std::to_string(compared) + " report files byte-identical for --workers 1 vs 8; "
                  "manifest equal apart from timings and worker count");
}

Outcome throughput(const std::string& cli, const fs::path& work) {
  Checker c;
  synth::Options opts;
  opts.originals = 50000;
  const auto data = synth::planted(opts);
  const auto files = write_dataset(data, work / "throughput");
  const auto r = run_child({cli, "full", "--input", files.tweets.string(), "--lexicon",
                            files.lexicon.string(), "--window-start", "2019-02-14T00:00:00Z",
                            "--window-end", "2019-02-24T00:00:00Z", "--out",
                            (work / "throughput" / "out").string()});
  const double mb = static_cast<double>(r.max_rss_kb) / 1024.0;
  c.expect(r.exit_code == 0, "exit " + std::to_string(r.exit_code));
  c.expect(r.seconds <= 60.0, "wall " + num(r.seconds) + " s");
  c.expect(mb <= 2048.0, "peak " + num(mb) + " MiB");
  return c.finish(std::to_string(opts.originals) + " originals (" +
                  std::to_string(data.records.size()) + " records) in " + num(r.seconds, 3) +
                  " s, peak RSS " + num(mb, 4) + " MiB");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ceed acceptance suite"};
  std::string cli;
  std::string work = "acceptance_work";
  int seeds = 120;
  int trials = 10000;
  app.add_option("--cli", cli, "path to the ceed executable")->required();
  app.add_option("--work", work, "scratch directory");
  app.add_option("--seeds", seeds, "random corpora for the oracle comparison");
  app.add_option("--trials", trials, "trials per bound suite");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 formula point checks", [] { return point_checks(); }},
      {"2 oracle equivalence", [&] { return oracle_equivalence(seeds); }},
      {"3 bound suites", [&] { return bound_suites(trials); }},
      {"4 planted events", [&] { return planted_events(work); }},
      {"5 worthiness ratio at tau 4", [] { return five_scores(); }},
      {"6 determinism across workers", [&] { return determinism(cli, work); }},
      {"7 throughput 50k", [&] { return throughput(cli, work); }},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
