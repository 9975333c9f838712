#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "emojimap/error.hpp"
#include "emojimap/sentiment.hpp"

using namespace emojimap;

namespace {

Lexicon tiny_lexicon() {
  Lexicon lex;
  lex.polarity = {{"great", 0.8}, {"good", 0.5}, {"bad", -0.6}, {"awful", -1.0}};
  lex.negators = {"not", "never"};
  return lex;
}

TokenSeq words(std::initializer_list<const char*> ws) {
  TokenSeq seq;
  for (const char* w : ws) seq.push_back({TokenKind::Word, w});
  return seq;
}

}  // namespace

TEST_CASE("score averages matched word polarities") {
  auto lex = tiny_lexicon();
  // [DERIVED] (0.8 - 0.6) / 2 = 0.1
  CHECK(score(words({"great", "movie", "bad", "ending"}), lex) ==
        doctest::Approx(0.1).epsilon(1e-12));
  CHECK(score(words({"good"}), lex) == doctest::Approx(0.5));
  CHECK(score(words({"nothing", "matches"}), lex) == 0.0);
  CHECK(score({}, lex) == 0.0);
}

TEST_CASE("a negator within three tokens flips the sign") {
  auto lex = tiny_lexicon();
  CHECK(score(words({"not", "good"}), lex) == doctest::Approx(-0.5));
  CHECK(score(words({"not", "x", "y", "good"}), lex) == doctest::Approx(-0.5));
  // four tokens back: out of the window
  CHECK(score(words({"not", "x", "y", "z", "good"}), lex) == doctest::Approx(0.5));
  // negator after the word has no effect
  CHECK(score(words({"good", "not"}), lex) == doctest::Approx(0.5));
}

TEST_CASE("the negation window ignores emoji tokens") {
  auto lex = tiny_lexicon();
  TokenSeq seq = {{TokenKind::Word, "not"},
                  {TokenKind::Emoji, "U+1F602"},
                  {TokenKind::Emoji, "U+1F602"},
                  {TokenKind::Emoji, "U+1F602"},
                  {TokenKind::Word, "x"},
                  {TokenKind::Word, "y"},
                  {TokenKind::Word, "good"}};
  // without emojis: not x y good -> still within the window
  CHECK(score(seq, lex) == doctest::Approx(-0.5));
}

TEST_CASE("emoji tokens never contribute to the score") {
  auto lex = tiny_lexicon();
  lex.polarity["U+1F602"] = 1.0;  // even a lexicon entry for an emoji label
  TokenSeq seq = {{TokenKind::Word, "bad"}, {TokenKind::Emoji, "U+1F602"}};
  CHECK(score(seq, lex) == doctest::Approx(-0.6));
}

TEST_CASE("score is clamped to [-1, 1]") {
  Lexicon lex;
  lex.polarity = {{"terrible", -1.0}, {"awful", -1.0}};
  const double s = score(words({"terrible", "awful"}), lex);
  CHECK(s >= -1.0);
  CHECK(s == doctest::Approx(-1.0));
}

TEST_CASE("lexicon file round-trip and validation") {
  const std::string path = "lexicon_test.tsv";
  {
    std::ofstream out(path);
    out << "# comment\ngreat\t0.8\nbad\t-0.6\n";
  }
  auto lex = load_lexicon(path);
  CHECK(lex.polarity.at("great") == doctest::Approx(0.8));
  CHECK(lex.polarity.at("bad") == doctest::Approx(-0.6));

  save_lexicon(lex, path);
  auto back = load_lexicon(path);
  CHECK(back.polarity == lex.polarity);

  {
    std::ofstream out(path);
    out << "huge\t1.5\n";
  }
  try {
    load_lexicon(path);
    FAIL("expected PolarityOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PolarityOutOfRange);
  }
  {
    std::ofstream out(path);
    out << "no tab here\n";
  }
  CHECK_THROWS_AS(load_lexicon(path), Error);
  std::remove(path.c_str());
}

TEST_CASE("negator list file extends the lexicon") {
  const std::string path = "negators_test.txt";
  {
    std::ofstream out(path);
    out << "# negators\nnot\nnever\n";
  }
  Lexicon lex;
  lex.polarity["good"] = 0.5;
  load_negators(lex, path);
  std::remove(path.c_str());
  CHECK(lex.negators.count("not") == 1);
  CHECK(score(words({"never", "good"}), lex) == doctest::Approx(-0.5));
}

TEST_CASE("make_scorer wraps the lexicon") {
  auto lex = tiny_lexicon();
  auto scorer = make_scorer(lex);
  CHECK(scorer(words({"great"})) == doctest::Approx(0.8));
}
