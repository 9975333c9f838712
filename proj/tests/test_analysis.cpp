#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "emojimap/analysis.hpp"
#include "emojimap/error.hpp"

using namespace emojimap;

namespace {

TokenSeq words(std::initializer_list<const char*> ws) {
  TokenSeq seq;
  for (const char* w : ws) seq.push_back({TokenKind::Word, w});
  return seq;
}

Lexicon tiny_lexicon() {
  Lexicon lex;
  lex.polarity = {{"good", 0.5}, {"bad", -0.5}, {"great", 1.0}};
  return lex;
}

EmbeddingMatrix word_grid(int vocab_size, int dim, std::uint64_t seed) {
  EmbeddingMatrix m;
  m.dim = dim;
  Rng rng(seed);
  for (int i = 0; i < vocab_size; ++i) {
    m.vocab.words.push_back("w" + std::to_string(i));
    m.vocab.index[m.vocab.words.back()] = i;
    m.vocab.counts.push_back(1);
    for (int d = 0; d < dim; ++d)
      m.data.push_back(static_cast<float>(rng.uniform(-1.0, 1.0)));
  }
  return m;
}

std::vector<float> random_unit(int dim, Rng& rng) {
  std::vector<float> v(dim);
  for (auto& x : v) x = static_cast<float>(rng.uniform(-1.0, 1.0));
  return v;
}

}  // namespace

TEST_CASE("jaccard matches hand-computed values") {
  std::set<std::string> a = {"x", "y", "z"}, b = {"y", "z", "w"};
  // [DERIVED] |{y,z}| / |{w,x,y,z}| = 0.5
  CHECK(jaccard(a, b) == doctest::Approx(0.5));
  CHECK(jaccard(a, a) == doctest::Approx(1.0));
  CHECK(jaccard(a, {"q"}) == doctest::Approx(0.0));
  CHECK(jaccard(a, {}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(jaccard({}, {}), Error);
}

TEST_CASE("overlap matrix has a unit diagonal and is symmetric") {
  auto m = word_grid(200, 8, 5);
  Rng rng(9);
  std::map<std::string, EmojiEmbeddingSet> sets;
  for (const char* name : {"Android", "iOS", "Random"}) {
    EmojiEmbeddingSet set;
    set.dim = 8;
    for (int e = 0; e < 5; ++e)
      set.vectors["U+1F6" + std::to_string(e) + "0"] = random_unit(8, rng);
    sets[name] = set;
  }
  auto matrix = neighbor_overlap_matrix(sets, m, 20);
  REQUIRE(matrix.labels.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(matrix.cells[i][i] == 1.0);  // exactly
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(matrix.cells[i][j] == matrix.cells[j][i]);
      CHECK(matrix.cells[i][j] >= 0.0);
      CHECK(matrix.cells[i][j] <= 1.0);
    }
  }
}

TEST_CASE("identical emoji sets give off-diagonal 1.0") {
  auto m = word_grid(100, 6, 17);
  Rng rng(3);
  EmojiEmbeddingSet set;
  set.dim = 6;
  for (int e = 0; e < 4; ++e)
    set.vectors["U+1F60" + std::to_string(e)] = random_unit(6, rng);
  std::map<std::string, EmojiEmbeddingSet> sets = {{"A", set}, {"B", set}};
  auto matrix = neighbor_overlap_matrix(sets, m, 10);
  CHECK(matrix.cells[0][1] == doctest::Approx(1.0));
}

TEST_CASE("independent random vectors give near-zero overlap") {
  auto m = word_grid(2000, 10, 23);
  Rng rng(29);
  std::map<std::string, EmojiEmbeddingSet> sets;
  for (const char* name : {"A", "B"}) {
    EmojiEmbeddingSet set;
    set.dim = 10;
    for (int e = 0; e < 10; ++e)
      set.vectors["U+1F6" + std::to_string(10 + e)] = random_unit(10, rng);
    sets[name] = set;
  }
  auto matrix = neighbor_overlap_matrix(sets, m, 50);
  CHECK(matrix.cells[0][1] < 0.10);
}

TEST_CASE("platform bias is the mean emoji-stripped score") {
  auto lex = tiny_lexicon();
  auto scorer = make_scorer(lex);
  std::vector<TokenSeq> corpus = {words({"good"}), words({"bad"}),
                                  words({"great"})};
  // [DERIVED] (0.5 - 0.5 + 1.0) / 3
  CHECK(platform_bias(corpus, scorer) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(platform_bias({}, scorer), Error);
}

TEST_CASE("bias ignores emojis in the tweets") {
  Lexicon lex;
  lex.polarity = {{"good", 0.5}};
  auto scorer = make_scorer(lex);
  TokenSeq with_emoji = words({"good"});
  with_emoji.push_back({TokenKind::Emoji, "U+1F622"});
  CHECK(platform_bias({with_emoji}, scorer) == doctest::Approx(0.5));
}

TEST_CASE("profile subtracts the bias before bootstrapping") {
  Lexicon lex;
  lex.polarity = {{"good", 0.5}, {"bad", -0.25}};
  auto scorer = make_scorer(lex);
  std::vector<TokenSeq> corpus;
  for (int i = 0; i < 6; ++i) {
    TokenSeq seq = words({i % 2 ? "good" : "bad"});
    seq.push_back({TokenKind::Emoji, "U+1F600"});
    corpus.push_back(std::move(seq));
  }
  ProfileOptions opts;
  opts.exhaustive = true;
  Rng rng(1);
  auto prof = emoji_sentiment_profile(corpus, "Android", "U+1F600", scorer, 0.125,
                                      opts, rng);
  CHECK(prof.n == 6);
  CHECK(prof.mean_adjusted == doctest::Approx(0.125 - 0.125));
  CHECK(prof.ci_low <= prof.mean_adjusted);
  CHECK(prof.ci_high >= prof.mean_adjusted);

  // bias shift moves everything exactly
  Rng rng2(1);
  auto prof2 = emoji_sentiment_profile(corpus, "Android", "U+1F600", scorer, 0.0,
                                       opts, rng2);
  CHECK(prof2.mean_adjusted == prof.mean_adjusted + 0.125);
  CHECK(prof2.ci_low == prof.ci_low + 0.125);
  CHECK(prof2.ci_high == prof.ci_high + 0.125);
}

TEST_CASE("profiles throw for an absent emoji") {
  Lexicon lex;
  lex.polarity = {{"good", 0.5}};
  auto scorer = make_scorer(lex);
  std::vector<TokenSeq> corpus = {words({"good"})};
  ProfileOptions opts;
  Rng rng(1);
  CHECK_THROWS_AS(
      emoji_sentiment_profile(corpus, "Android", "U+1F600", scorer, 0.0, opts, rng),
      Error);
}

TEST_CASE("platform_profiles is reproducible and honors min_occurrences") {
  Lexicon lex;
  lex.polarity = {{"good", 0.5}, {"bad", -0.5}};
  auto scorer = make_scorer(lex);
  Rng mix(8);
  std::vector<TokenSeq> corpus;
  for (int i = 0; i < 40; ++i) {
    TokenSeq seq = words({mix.bernoulli(0.5) ? "good" : "bad"});
    seq.push_back({TokenKind::Emoji, "U+1F600"});
    if (i < 2) seq.push_back({TokenKind::Emoji, "U+1F622"});
    corpus.push_back(std::move(seq));
  }
  ProfileOptions opts;
  auto p1 = platform_profiles(corpus, "Android", scorer, 0.0, opts, 99, 5);
  auto p2 = platform_profiles(corpus, "Android", scorer, 0.0, opts, 99, 5);
  REQUIRE(p1.size() == 1);  // U+1F622 below min_occurrences
  CHECK(p1[0].emoji == "U+1F600");
  CHECK(p1[0].ci_low == p2[0].ci_low);
  CHECK(p1[0].ci_high == p2[0].ci_high);
}

TEST_CASE("divergence report flags disjoint intervals and counts fractions") {
  SentimentProfile a1{"Android", "U+1F600", 0.5, 0.0, 0.45, 0.55, 10};
  SentimentProfile b1{"iOS", "U+1F600", -0.4, 0.0, -0.45, -0.35, 10};  // disjoint
  SentimentProfile a2{"Android", "U+1F622", 0.1, 0.0, 0.0, 0.2, 10};
  SentimentProfile b2{"iOS", "U+1F622", 0.15, 0.0, 0.05, 0.25, 10};   // overlaps
  std::map<std::string, std::vector<TokenSeq>> corpora;
  TokenSeq t1 = {{TokenKind::Emoji, "U+1F600"}};
  TokenSeq t2 = {{TokenKind::Emoji, "U+1F622"}};
  TokenSeq t3 = {{TokenKind::Word, "plain"}};
  corpora["Android"] = {t1, t2, t3};
  corpora["iOS"] = {t2};
  auto report = divergence_report({a1, b1, a2, b2}, corpora);
  CHECK(report.flagged.count("U+1F600") == 1);
  CHECK(report.flagged.count("U+1F622") == 0);
  CHECK(report.emoji_divergent_fraction == doctest::Approx(0.5));
  CHECK(report.tweet_affected_fraction == doctest::Approx(0.25));
  CHECK(!report.global_sample_fraction.has_value());

  std::vector<TokenSeq> background = {t1, t3, t3, t3};
  auto r2 = divergence_report({a1, b1, a2, b2}, corpora, nullptr, &background);
  REQUIRE(r2.global_sample_fraction.has_value());
  CHECK(*r2.global_sample_fraction == doctest::Approx(0.25));
}

TEST_CASE("welch mode flags significant raw-score differences") {
  SentimentProfile a{"Android", "U+1F600", 0.0, 0.0, -0.1, 0.1, 4};
  SentimentProfile b{"iOS", "U+1F600", 0.0, 0.0, -0.1, 0.1, 4};
  std::map<std::string, std::map<std::string, std::vector<double>>> raw;
  raw["Android"]["U+1F600"] = {0.9, 1.0, 1.1, 1.0};
  raw["iOS"]["U+1F600"] = {-0.9, -1.0, -1.1, -1.0};
  std::map<std::string, std::vector<TokenSeq>> corpora;
  corpora["Android"] = {};
  corpora["iOS"] = {};
  DivergenceOptions opts;
  opts.use_welch = true;
  auto report = divergence_report({a, b}, corpora, &raw, nullptr, opts);
  CHECK(report.flagged.count("U+1F600") == 1);
}

TEST_CASE("emoji_adjusted_scores groups by contained emoji") {
  Lexicon lex;
  lex.polarity = {{"good", 0.5}};
  auto scorer = make_scorer(lex);
  TokenSeq seq = words({"good"});
  seq.push_back({TokenKind::Emoji, "U+1F600"});
  seq.push_back({TokenKind::Emoji, "U+1F622"});
  auto groups = emoji_adjusted_scores({seq, words({"good"})}, scorer, 0.25);
  REQUIRE(groups.size() == 2);
  CHECK(groups.at("U+1F600") == std::vector<double>{0.25});
  CHECK(groups.at("U+1F622") == std::vector<double>{0.25});
}
