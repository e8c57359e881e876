#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ceed/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write a synthetic tweet corpus with three planted events"};
  ceed::synth::Options opts;
  std::string out_dir = "synth";
  std::size_t malformed = 0;
  app.add_option("--originals", opts.originals, "Original tweets")->capture_default_str();
  app.add_option("--seed", opts.seed, "Random seed")->capture_default_str();
  app.add_option("--retweet-share", opts.retweet_share, "Share of tweets that get retweets")
      ->capture_default_str();
  app.add_option("--orphans", opts.orphan_retweets, "Retweets of unknown tweets")
      ->capture_default_str();
  app.add_option("--out-of-window", opts.out_of_window, "Records before the window")
      ->capture_default_str();
  app.add_option("--malformed", malformed, "Unparseable lines to append")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const auto data = ceed::synth::planted(opts);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  {
    std::ofstream out(dir / "tweets.jsonl");
    ceed::synth::write_jsonl(out, data.records);
    for (std::size_t i = 0; i < malformed; ++i) out << "{\"id\": \"broken" << i << "\", \n";
  }
  {
    std::ofstream out(dir / "titles.txt");
    ceed::synth::write_titles(out, data);
  }
  {
    std::ofstream out(dir / "anchors.tsv");
    ceed::synth::write_anchors(out, data);
  }
  std::cout << data.records.size() + malformed << " records written to " << out_dir << '\n';
  return 0;
}
