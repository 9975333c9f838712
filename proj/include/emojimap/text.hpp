#pragma once

// Tokenization, emoji inventory matching, and emoji stripping.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace emojimap {

enum class TokenKind { Word, Emoji, UrlPlaceholder, MentionPlaceholder };

struct Token {
  TokenKind kind = TokenKind::Word;
  // Words are lowercased; emoji surfaces are codepoint labels like
  // "U+1F602" (ZWJ sequences join labels with '-').
  std::string surface;

  bool operator==(const Token&) const = default;
};

using TokenSeq = std::vector<Token>;

// Placeholder surfaces double as vocabulary entries.
inline constexpr const char* kUrlSurface = "<url>";
inline constexpr const char* kMentionSurface = "<mention>";

// UTF-8 <-> codepoint helpers (invalid bytes decode to U+FFFD).
std::vector<char32_t> utf8_decode(const std::string& s);
std::string utf8_encode(const std::vector<char32_t>& cps);

// "U+1F602" style label for an emoji codepoint sequence.
std::string emoji_label(const std::vector<char32_t>& seq);
std::vector<char32_t> parse_emoji_label(const std::string& label);

class EmojiInventory {
 public:
  EmojiInventory() = default;
  static EmojiInventory defaults();
  // One "U+XXXX" label per line ('-'-joined for sequences), '#' comments.
  static EmojiInventory load(const std::string& path);
  void save(const std::string& path) const;

  void add(const std::vector<char32_t>& seq);
  void add(char32_t cp) { add(std::vector<char32_t>{cp}); }
  bool contains(char32_t cp) const;
  bool empty() const { return sequences_.empty(); }
  std::size_t size() const { return sequences_.size(); }

  // Longest inventory sequence starting at text[pos]; 0 if none.
  std::size_t match_at(const std::vector<char32_t>& text, std::size_t pos) const;

  std::vector<std::string> labels() const;

 private:
  // sorted by length descending then lexicographic, for longest-first match
  std::vector<std::vector<char32_t>> sequences_;
  std::set<char32_t> singles_;
  std::size_t max_len_ = 0;
};

bool is_emoji(char32_t cp, const EmojiInventory& inventory);

class StopwordList {
 public:
  static StopwordList defaults();
  static StopwordList load(const std::string& path);
  bool contains(const std::string& word) const { return words_.count(word) > 0; }
  void add(const std::string& word) { words_.insert(word); }

 private:
  std::set<std::string> words_;
};

struct TokenizeConfig {
  StopwordList stopwords = StopwordList::defaults();
};

TokenSeq tokenize(const std::string& text, const TokenizeConfig& config,
                  const EmojiInventory& inventory);

TokenSeq strip_emojis(const TokenSeq& seq);

}  // namespace emojimap
