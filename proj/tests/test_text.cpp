#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "emojimap/error.hpp"
#include "emojimap/text.hpp"

using namespace emojimap;

namespace {
std::vector<std::string> surfaces(const TokenSeq& seq) {
  std::vector<std::string> out;
  for (const auto& t : seq) out.push_back(t.surface);
  return out;
}
}  // namespace

TEST_CASE("utf8 round-trip across code unit lengths") {
  // 1-, 2-, 3-, 4-byte encodings
  std::vector<char32_t> cps = {0x41, 0x00E9, 0x2764, 0x1F602};
  CHECK(utf8_decode(utf8_encode(cps)) == cps);
}

TEST_CASE("invalid utf8 decodes to replacement characters") {
  auto cps = utf8_decode("a\xFFz");
  REQUIRE(cps.size() == 3);
  CHECK(cps[0] == U'a');
  CHECK(cps[1] == 0xFFFD);
  CHECK(cps[2] == U'z');
}

TEST_CASE("emoji labels are zero-padded uppercase hex") {
  CHECK(emoji_label({0x1F602}) == "U+1F602");
  CHECK(emoji_label({0x61}) == "U+0061");
  CHECK(emoji_label({0x2764, 0x1F525}) == "U+2764-U+1F525");
  CHECK(parse_emoji_label("U+2764-U+1F525") ==
        std::vector<char32_t>{0x2764, 0x1F525});
  CHECK(parse_emoji_label(emoji_label({0x1F600})) ==
        std::vector<char32_t>{0x1F600});
  CHECK_THROWS_AS(parse_emoji_label("1F602"), Error);
  CHECK_THROWS_AS(parse_emoji_label("U+"), Error);
  CHECK_THROWS_AS(parse_emoji_label("U+110000"), Error);
}

TEST_CASE("tokenize lowercases, strips punctuation, keeps hashtag words") {
  TokenizeConfig cfg;
  auto toks = tokenize("Great Win!!! #Happy, really?", cfg,
                       EmojiInventory::defaults());
  CHECK(surfaces(toks) ==
        std::vector<std::string>{"great", "win", "happy", "really"});
  for (const auto& t : toks) CHECK(t.kind == TokenKind::Word);
}

TEST_CASE("urls and mentions become placeholders") {
  TokenizeConfig cfg;
  auto toks = tokenize("see https://t.co/Abc123 cc @SomeUser now", cfg,
                       EmojiInventory::defaults());
  REQUIRE(toks.size() == 5);
  CHECK(toks[0] == Token{TokenKind::Word, "see"});
  CHECK(toks[1] == Token{TokenKind::UrlPlaceholder, kUrlSurface});
  CHECK(toks[2] == Token{TokenKind::Word, "cc"});
  CHECK(toks[3] == Token{TokenKind::MentionPlaceholder, kMentionSurface});
  CHECK(toks[4] == Token{TokenKind::Word, "now"});
}

TEST_CASE("stopwords are removed") {
  TokenizeConfig cfg;
  auto toks = tokenize("the cat is on a mat", cfg, EmojiInventory::defaults());
  CHECK(surfaces(toks) == std::vector<std::string>{"cat", "mat"});
}

TEST_CASE("inventory emojis split out even when glued to words") {
  TokenizeConfig cfg;
  auto toks = tokenize("love\xF0\x9F\x98\x82win", cfg, EmojiInventory::defaults());
  REQUIRE(toks.size() == 3);
  CHECK(toks[0] == Token{TokenKind::Word, "love"});
  CHECK(toks[1] == Token{TokenKind::Emoji, "U+1F602"});
  CHECK(toks[2] == Token{TokenKind::Word, "win"});
}

TEST_CASE("repeated emojis produce repeated tokens") {
  TokenizeConfig cfg;
  auto toks = tokenize("\xF0\x9F\x98\x82\xF0\x9F\x98\x82", cfg,
                       EmojiInventory::defaults());
  REQUIRE(toks.size() == 2);
  CHECK(toks[0].surface == "U+1F602");
  CHECK(toks[1].surface == "U+1F602");
}

TEST_CASE("non-inventory emoji are ordinary text, not Emoji tokens") {
  EmojiInventory inv;
  inv.add(static_cast<char32_t>(0x1F602));
  TokenizeConfig cfg;
  // U+1F680 rocket not in this inventory: treated as a plain non-ASCII word
  auto toks = tokenize("go \xF0\x9F\x9A\x80 now", cfg, inv);
  REQUIRE(toks.size() == 3);
  for (const auto& t : toks) CHECK(t.kind == TokenKind::Word);
  CHECK(toks[1].surface == "\xF0\x9F\x9A\x80");
}

TEST_CASE("longest inventory sequence wins") {
  EmojiInventory inv;
  inv.add(static_cast<char32_t>(0x2764));
  inv.add(std::vector<char32_t>{0x2764, 0x1F525});  // heart on fire pieces
  std::vector<char32_t> text = {0x2764, 0x1F525, 0x2764};
  CHECK(inv.match_at(text, 0) == 2);
  CHECK(inv.match_at(text, 2) == 1);
  TokenizeConfig cfg;
  auto toks = tokenize(utf8_encode(text), cfg, inv);
  REQUIRE(toks.size() == 2);
  CHECK(toks[0].surface == "U+2764-U+1F525");
  CHECK(toks[1].surface == "U+2764");
}

TEST_CASE("strip_emojis removes exactly the emoji tokens") {
  TokenSeq seq = {{TokenKind::Word, "hi"},
                  {TokenKind::Emoji, "U+1F602"},
                  {TokenKind::UrlPlaceholder, kUrlSurface}};
  auto stripped = strip_emojis(seq);
  REQUIRE(stripped.size() == 2);
  CHECK(stripped[0].surface == "hi");
  CHECK(stripped[1].kind == TokenKind::UrlPlaceholder);
}

TEST_CASE("inventory file round-trip") {
  EmojiInventory inv;
  inv.add(static_cast<char32_t>(0x1F602));
  inv.add(std::vector<char32_t>{0x2764, 0x1F525});
  const std::string path = "inventory_roundtrip_test.txt";
  inv.save(path);
  auto back = EmojiInventory::load(path);
  std::remove(path.c_str());
  CHECK(back.size() == inv.size());
  CHECK(back.labels() == inv.labels());
}

TEST_CASE("inventory load skips comments and rejects empty files") {
  const std::string path = "inventory_comments_test.txt";
  {
    std::ofstream out(path);
    out << "# header\nU+1F602  # tears of joy\n\n";
  }
  auto inv = EmojiInventory::load(path);
  CHECK(inv.size() == 1);
  {
    std::ofstream out(path);
    out << "# only comments\n";
  }
  CHECK_THROWS_AS(EmojiInventory::load(path), Error);
  std::remove(path.c_str());
}

TEST_CASE("default inventory covers the emoticon block") {
  auto inv = EmojiInventory::defaults();
  CHECK(inv.contains(0x1F600));
  CHECK(inv.contains(0x1F64F));
  CHECK(inv.contains(0x1F602));
  CHECK(inv.contains(0x2764));
  CHECK(!inv.contains(0x1F680));
  CHECK(inv.size() >= 80);
}

TEST_CASE("apostrophes stay inside words, stopword contractions drop") {
  TokenizeConfig cfg;
  auto toks = tokenize("don't panic, it's rob's fault", cfg,
                       EmojiInventory::defaults());
  CHECK(surfaces(toks) == std::vector<std::string>{"panic", "rob's", "fault"});
}
