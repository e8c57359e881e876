#include "ceed/lexicon.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "ceed/error.hpp"

namespace ceed {
namespace {

TitlesLexicon from_text(const std::string& titles, const std::string& anchors, int max_len = 5,
                        LexiconBuildReport* rep = nullptr) {
  std::istringstream t(titles), a(anchors);
  return build_lexicon(t, a, max_len, rep);
}

TEST(Lexicon, TitlesAreNormalized) {
  const auto lex = from_text("Pulwama attack\n  Indian   Air Force \n\n", "");
  EXPECT_TRUE(lex.lookup("pulwama attack"));
  EXPECT_TRUE(lex.lookup("indian air force"));
  EXPECT_FALSE(lex.lookup("Pulwama attack"));
  EXPECT_FALSE(lex.lookup("pulwama"));
  EXPECT_EQ(lex.title_count(), 2u);
}

TEST(Lexicon, AnchorProbabilityIsLinkShare) {
  LexiconBuildReport rep;
  const auto lex = from_text("", "war\t50\t100\nx\t3\t0\nbad line\nWar\t10\t20\npeace\t9\t3\n", 5, &rep);
  EXPECT_DOUBLE_EQ(lex.anchor_prob("war"), 60.0 / 120.0);
  EXPECT_DOUBLE_EQ(lex.anchor_prob("peace"), 1.0);
  EXPECT_DOUBLE_EQ(lex.anchor_prob("x"), 0.0);
  EXPECT_DOUBLE_EQ(lex.anchor_prob("unknown"), 0.0);
  EXPECT_EQ(rep.anchor_lines, 5u);
  EXPECT_EQ(rep.anchors_skipped, 2u);
  EXPECT_EQ(rep.anchors_kept, 2u);
}

TEST(Lexicon, PhrasesLongerThanMaxLenAreDropped) {
  const auto lex = from_text("a b c\na b\n", "a b c\t1\t2\n", 2);
  EXPECT_TRUE(lex.lookup("a b"));
  EXPECT_FALSE(lex.lookup("a b c"));
  EXPECT_DOUBLE_EQ(lex.anchor_prob("a b c"), 0.0);

  const TitlesLexicon direct({"one two three"}, {}, 2);
  EXPECT_FALSE(direct.lookup("one two three"));
}

TEST(Lexicon, ConstructorClampsAndValidates) {
  const TitlesLexicon lex({"a"}, {{"a", 1.5}, {"b", -0.5}}, 3);
  EXPECT_DOUBLE_EQ(lex.anchor_prob("a"), 1.0);
  EXPECT_DOUBLE_EQ(lex.anchor_prob("b"), 0.0);
  EXPECT_THROW(TitlesLexicon({}, {}, 0), ConfigError);
}

TEST(Lexicon, BinaryRoundTrip) {
  const TitlesLexicon lex({"zeta", "alpha beta", "m"}, {{"alpha beta", 0.25}, {"zeta", 0.125}}, 4);
  std::stringstream buf;
  lex.write(buf);
  const std::string bytes = buf.str();
  EXPECT_EQ(bytes.substr(0, 8), std::string("CEEDLEX\0", 8));
  const auto back = TitlesLexicon::read(buf);
  EXPECT_EQ(back.titles(), lex.titles());
  EXPECT_EQ(back.anchors(), lex.anchors());
  EXPECT_EQ(back.max_len(), 4);

  std::stringstream again;
  back.write(again);
  EXPECT_EQ(again.str(), bytes);
}

TEST(Lexicon, ReadRejectsGarbage) {
  std::stringstream junk("NOTALEXICON");
  EXPECT_ANY_THROW(TitlesLexicon::read(junk));
  const TitlesLexicon lex({"a"}, {{"a", 0.5}});
  std::stringstream buf;
  lex.write(buf);
  std::stringstream cut(buf.str().substr(0, buf.str().size() - 3));
  EXPECT_ANY_THROW(TitlesLexicon::read(cut));
}

TEST(Lexicon, SaveAndLoadFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "ceed_lexicon_test";
  std::filesystem::create_directories(dir);
  const TitlesLexicon lex({"river bank"}, {{"river bank", 0.1}});
  lex.save(dir / "lex.bin");
  const auto back = TitlesLexicon::load(dir / "lex.bin");
  EXPECT_TRUE(back.lookup("river bank"));
  EXPECT_DOUBLE_EQ(back.anchor_prob("river bank"), 0.1);
  EXPECT_THROW(TitlesLexicon::load(dir / "missing.bin"), ConfigError);
  EXPECT_THROW(build_lexicon(dir / "none.txt", dir / "none.tsv", 5), ConfigError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace ceed
